//! Division-free level recurrence of the generalized Routh-Hurwitz table.
//!
//! Level `p` holds `a_k^(p)` and `b_k^(p)` for `k = p..=n`. Column `j` of a
//! level corresponds to `k = p + j`; row 1 holds `a` at even `j` and `b` at
//! odd `j`, row 2 holds the other letter. Odd and even degrees are both
//! instances of this alternation.

use num_rational::BigRational;
use num_traits::Zero;

/// Ring operations the recurrence needs. Implemented for exact rationals and
/// for floats that carry a running magnitude bound.
pub(crate) trait TableRing: Clone {
    fn zero() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Divides a finished level by a positive factor if it has drifted out
    /// of range; returns the factor (1 when untouched).
    fn normalize(_level: &mut Level<Self>) -> f64 {
        1.0
    }
}

impl TableRing for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

pub(crate) const RESCALE_ABOVE: f64 = 1e100;
pub(crate) const RESCALE_BELOW: f64 = 1e-100;

/// A float together with the value the same expression takes when every
/// input is replaced by its modulus and every subtraction by an addition.
/// The rounding error of `value` is bounded by a small multiple of
/// `mag · ε`, so `mag` is the reference scale for sign tests.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Tracked {
    pub value: f64,
    pub mag: f64,
}

impl Tracked {
    pub fn input(x: f64) -> Self {
        Tracked {
            value: x,
            mag: x.abs(),
        }
    }
}

impl TableRing for Tracked {
    fn zero() -> Self {
        Tracked { value: 0.0, mag: 0.0 }
    }

    fn add(&self, rhs: &Self) -> Self {
        Tracked {
            value: self.value + rhs.value,
            mag: self.mag + rhs.mag,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Tracked {
            value: self.value - rhs.value,
            mag: self.mag + rhs.mag,
        }
    }

    /// The bound carries an absolute floor of `MIN_POSITIVE`: a product that
    /// underflows keeps a nonzero uncertainty, which a later rescale scales up
    /// with the rest of the level instead of reviving a flushed zero.
    fn mul(&self, rhs: &Self) -> Self {
        Tracked {
            value: self.value * rhs.value,
            mag: self.mag * rhs.mag + f64::MIN_POSITIVE,
        }
    }

    fn normalize(level: &mut Level<Self>) -> f64 {
        let top = level
            .a
            .iter()
            .chain(level.b.iter())
            .map(|t| t.mag.max(t.value.abs()))
            .fold(0.0, f64::max);
        if !top.is_finite() || top == 0.0 || (RESCALE_BELOW..=RESCALE_ABOVE).contains(&top) {
            return 1.0;
        }
        for t in level.a.iter_mut().chain(level.b.iter_mut()) {
            t.value /= top;
            t.mag = t.mag / top + f64::MIN_POSITIVE;
        }
        top
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Level<T> {
    /// Level index `p`, 1-based.
    pub p: usize,
    /// `a[j] = a_{p+j}^(p)`
    pub a: Vec<T>,
    /// `b[j] = b_{p+j}^(p)`
    pub b: Vec<T>,
}

impl<T: Clone> Level<T> {
    pub fn pivot(&self) -> &T {
        &self.a[0]
    }

    pub fn row1(&self) -> Vec<T> {
        (0..self.a.len())
            .map(|j| if j % 2 == 0 { self.a[j].clone() } else { self.b[j].clone() })
            .collect()
    }

    pub fn row2(&self) -> Vec<T> {
        (0..self.a.len())
            .map(|j| if j % 2 == 0 { self.b[j].clone() } else { self.a[j].clone() })
            .collect()
    }
}

/// Level 1 from `(a_j, b_j)`, `j = 1..=n`, treating the implicit leading
/// coefficient as level 0.
pub(crate) fn first_level<T: TableRing>(coeffs: &[(T, T)]) -> Level<T> {
    let n = coeffs.len();
    let mut a = vec![T::zero(); n];
    let mut b = vec![T::zero(); n];
    for j in 0..n {
        if j % 2 == 0 {
            a[j] = coeffs[j].0.clone();
        } else {
            b[j] = coeffs[j].1.clone();
        }
    }
    let a1 = coeffs[0].0.clone();
    for j in 0..n {
        if j % 2 == 0 {
            let next = if j + 1 < n { b[j + 1].clone() } else { T::zero() };
            b[j] = a1.mul(&coeffs[j].1).sub(&next);
        } else {
            let next = if j + 1 < n { a[j + 1].clone() } else { T::zero() };
            a[j] = a1.mul(&coeffs[j].0).sub(&next);
        }
    }
    Level { p: 1, a, b }
}

/// Level `p` from level `p - 1` (requires `p ≤ n - 1`).
pub(crate) fn next_level<T: TableRing>(prev: &Level<T>) -> Level<T> {
    let len = prev.a.len() - 1;
    let lead_a = &prev.a[0];
    let lead_b = &prev.b[0];
    let mut a = vec![T::zero(); len];
    let mut b = vec![T::zero(); len];
    for j in 0..len {
        let (pa, pb) = (&prev.a[j + 1], &prev.b[j + 1]);
        if j % 2 == 0 {
            a[j] = lead_a.mul(pa).add(&lead_b.mul(pb));
        } else {
            b[j] = lead_a.mul(pb).sub(&lead_b.mul(pa));
        }
    }
    let pivot = a[0].clone();
    for j in 0..len {
        let (pa, pb) = (&prev.a[j + 1], &prev.b[j + 1]);
        if j % 2 == 0 {
            let next = if j + 1 < len { b[j + 1].clone() } else { T::zero() };
            b[j] = pivot.mul(pb).sub(&lead_a.mul(&next));
        } else {
            let next = if j + 1 < len { a[j + 1].clone() } else { T::zero() };
            a[j] = pivot.mul(pa).sub(&lead_a.mul(&next));
        }
    }
    Level { p: prev.p + 1, a, b }
}

/// `a_n^(n) = a_{n-1} a_n + b_{n-1} b_n` taken from level `n - 1`.
pub(crate) fn final_pivot<T: TableRing>(last: &Level<T>) -> T {
    debug_assert_eq!(last.a.len(), 2);
    last.a[0].mul(&last.a[1]).add(&last.b[0].mul(&last.b[1]))
}

pub(crate) enum Step<T> {
    /// A completed level `p ≤ n - 1` and the factor it was divided by.
    Level(Level<T>, f64),
    /// The final pivot `a_n^(n)`.
    Final(T),
}

/// Walks the table level by level so callers can stop at any pivot.
pub(crate) struct Steps<'a, T> {
    coeffs: &'a [(T, T)],
    last: Option<Level<T>>,
    done: bool,
}

impl<'a, T: TableRing> Steps<'a, T> {
    pub fn new(coeffs: &'a [(T, T)]) -> Self {
        assert!(!coeffs.is_empty(), "degree must be at least 1");
        Steps {
            coeffs,
            last: None,
            done: false,
        }
    }
}

impl<T: TableRing> Iterator for Steps<'_, T> {
    type Item = Step<T>;

    fn next(&mut self) -> Option<Step<T>> {
        if self.done {
            return None;
        }
        let n = self.coeffs.len();
        if n == 1 {
            self.done = true;
            return Some(Step::Final(self.coeffs[0].0.clone()));
        }
        let mut level = match &self.last {
            None => first_level(self.coeffs),
            Some(prev) if prev.p == n - 1 => {
                self.done = true;
                return Some(Step::Final(final_pivot(prev)));
            }
            Some(prev) => next_level(prev),
        };
        let factor = T::normalize(&mut level);
        self.last = Some(level.clone());
        Some(Step::Level(level, factor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<(BigRational, BigRational)> {
        v.iter().map(|&(a, b)| (q(a), q(b))).collect()
    }

    #[test]
    fn quadratic_first_level() {
        let c = pairs(&[(3, 0), (3, 1)]);
        let l = first_level(&c);
        assert_eq!(l.row1(), vec![q(3), q(1)]);
        assert_eq!(l.row2(), vec![q(-1), q(9)]);
        assert_eq!(final_pivot(&l), q(26));
    }

    #[test]
    fn quartic_matches_hand_expanded_table() {
        // generic quartic with distinct small entries, checked line by line
        // against the closed-form entries of the n = 4 table
        let (a1, b1, a2, b2, a3, b3, a4, b4) = (2i64, 1, 3, -1, 4, 2, 5, -3);
        let c = pairs(&[(a1, b1), (a2, b2), (a3, b3), (a4, b4)]);
        let l1 = first_level(&c);
        let b1_1 = a1 * b1 - b2;
        let a2_1 = a1 * a2 - a3;
        let b3_1 = a1 * b3 - b4;
        let a4_1 = a1 * a4;
        assert_eq!(l1.row1(), vec![q(a1), q(b2), q(a3), q(b4)]);
        assert_eq!(l1.row2(), vec![q(b1_1), q(a2_1), q(b3_1), q(a4_1)]);

        let l2 = next_level(&l1);
        let a2_2 = a1 * a2_1 + b1_1 * b2;
        let b3_2 = a1 * b3_1 - b1_1 * a3;
        let a4_2 = a1 * a4_1 + b1_1 * b4;
        let b2_2 = a2_2 * b2 - a1 * b3_2;
        let a3_2 = a2_2 * a3 - a1 * a4_2;
        let b4_2 = a2_2 * b4;
        assert_eq!(l2.row1(), vec![q(a2_2), q(b3_2), q(a4_2)]);
        assert_eq!(l2.row2(), vec![q(b2_2), q(a3_2), q(b4_2)]);

        let l3 = next_level(&l2);
        let a3_3 = a2_2 * a3_2 + b2_2 * b3_2;
        let b4_3 = a2_2 * b4_2 - b2_2 * a4_2;
        let b3_3 = a3_3 * b3_2 - a2_2 * b4_3;
        let a4_3 = a3_3 * a4_2;
        assert_eq!(l3.row1(), vec![q(a3_3), q(b4_3)]);
        assert_eq!(l3.row2(), vec![q(b3_3), q(a4_3)]);

        let a4_4 = BigInt::from(a3_3) * BigInt::from(a4_3) + BigInt::from(b3_3) * BigInt::from(b4_3);
        assert_eq!(final_pivot(&l3), BigRational::from_integer(a4_4));
    }

    #[test]
    fn odd_degree_last_column_rules() {
        // n = 3: last column of level 1 is a_3 over b_3^(1) = a_1 b_3
        let c = pairs(&[(2, 5), (7, 1), (3, 4)]);
        let l = first_level(&c);
        assert_eq!(l.row1(), vec![q(2), q(1), q(3)]);
        assert_eq!(l.row2(), vec![q(2 * 5 - 1), q(2 * 7 - 3), q(2 * 4)]);
    }

    #[test]
    fn tracked_rescales_large_levels() {
        let big = 1e120;
        let c: Vec<_> = [(big, 0.0), (big * big * 1e-100, 0.0)]
            .iter()
            .map(|&(a, b)| (Tracked::input(a), Tracked::input(b)))
            .collect();
        let mut steps = Steps::new(&c);
        match steps.next() {
            Some(Step::Level(level, factor)) => {
                assert!(factor > RESCALE_ABOVE);
                assert!(level.row1().iter().all(|t| t.mag <= 1.0));
                assert!(level.pivot().value > 0.0);
            }
            _ => panic!("expected a level"),
        }
        assert!(matches!(steps.next(), Some(Step::Final(t)) if t.value > 0.0));
        assert!(steps.next().is_none());
    }

    #[test]
    fn underflow_keeps_an_uncertainty() {
        let tiny = Tracked::input(1e-200);
        let p = tiny.mul(&tiny);
        assert_eq!(p.value, 0.0);
        assert!(p.mag > 0.0);
        let mut level = Level {
            p: 1,
            a: vec![Tracked::input(1e-150), p],
            b: vec![Tracked::input(-1e-150), Tracked::zero()],
        };
        let factor = Tracked::normalize(&mut level);
        assert_eq!(factor, 1e-150);
        // the flushed entry is still indistinguishable from zero at any sane tolerance
        assert!(level.a[1].mag * 1e-12 > f64::MIN_POSITIVE);
        assert_eq!(level.a[1].value, 0.0);
    }
}
