use num_rational::BigRational;
use serde::Serialize;

use crate::poly::ComplexPolynomial;
use crate::routh::recurrence::{Level, Step, Steps, TableRing, Tracked};
use crate::scalar::{float_sign, robust_sign, Mode, Scalar, SignClass, Tolerance};
use crate::verdict::StabilityVerdict;

/// One `2 × (n − p + 1)` level of the generalized table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhLevel {
    #[serde(rename = "p")]
    pub index: usize,
    pub row1: Vec<Scalar>,
    pub row2: Vec<Scalar>,
}

/// A pivot `a_k^(k)` with the magnitude reference used for its sign test
/// (always 0 in exact mode).
#[derive(Clone, Debug, PartialEq)]
pub struct Pivot {
    pub value: Scalar,
    pub scale: f64,
}

impl Pivot {
    pub fn sign(&self, tol: Tolerance) -> SignClass {
        robust_sign(&self.value, self.scale, tol)
    }
}

/// The full generalized Routh-Hurwitz table of a monic complex polynomial.
#[derive(Clone, Debug)]
pub struct RhTable {
    pub polynomial: ComplexPolynomial,
    /// Levels `p = 1..n-1`; empty for `n = 1`.
    pub levels: Vec<RhLevel>,
    pub final_pivot: Scalar,
    /// `a_1^(1), …, a_n^(n)`.
    pub pivots: Vec<Pivot>,
    /// Positive factor each level was divided by (all 1 in exact mode).
    pub scaling_log: Vec<f64>,
}

/// Entry types the table can be evaluated in.
pub(crate) trait TableEntry: TableRing {
    fn to_scalar(&self) -> Scalar;
    fn scale(&self) -> f64;
    fn sign(&self, tol: Tolerance) -> SignClass;
}

impl TableEntry for BigRational {
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn scale(&self) -> f64 {
        0.0
    }

    fn sign(&self, tol: Tolerance) -> SignClass {
        robust_sign(&Scalar::Exact(self.clone()), 0.0, tol)
    }
}

impl TableEntry for Tracked {
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(self.value)
    }

    fn scale(&self) -> f64 {
        self.mag
    }

    fn sign(&self, tol: Tolerance) -> SignClass {
        float_sign(self.value, self.mag, tol)
    }
}

pub(crate) fn exact_pairs(p: &ComplexPolynomial) -> Vec<(BigRational, BigRational)> {
    p.coeffs()
        .iter()
        .map(|c| {
            (
                c.re.to_exact().expect("exact-mode coefficient"),
                c.im.to_exact().expect("exact-mode coefficient"),
            )
        })
        .collect()
}

pub(crate) fn tracked_pairs(p: &ComplexPolynomial) -> Vec<(Tracked, Tracked)> {
    p.coeffs()
        .iter()
        .map(|c| (Tracked::input(c.re.to_f64()), Tracked::input(c.im.to_f64())))
        .collect()
}

fn to_rh_level<T: TableEntry>(level: &Level<T>) -> RhLevel {
    RhLevel {
        index: level.p,
        row1: level.row1().iter().map(T::to_scalar).collect(),
        row2: level.row2().iter().map(T::to_scalar).collect(),
    }
}

fn collect<T: TableEntry>(polynomial: &ComplexPolynomial, coeffs: &[(T, T)]) -> RhTable {
    let mut levels = Vec::new();
    let mut pivots = Vec::new();
    let mut scaling_log = Vec::new();
    let mut final_pivot = None;
    for step in Steps::new(coeffs) {
        match step {
            Step::Level(level, factor) => {
                let pivot = level.pivot();
                pivots.push(Pivot {
                    value: pivot.to_scalar(),
                    scale: pivot.scale(),
                });
                levels.push(to_rh_level(&level));
                scaling_log.push(factor);
            }
            Step::Final(t) => {
                pivots.push(Pivot {
                    value: t.to_scalar(),
                    scale: t.scale(),
                });
                final_pivot = Some(t.to_scalar());
            }
        }
    }
    RhTable {
        polynomial: polynomial.clone(),
        levels,
        final_pivot: final_pivot.expect("walk always ends with the final pivot"),
        pivots,
        scaling_log,
    }
}

/// Builds every level of the table; no division is performed.
pub fn build_table(p: &ComplexPolynomial) -> RhTable {
    match p.mode() {
        Mode::Exact => collect(p, &exact_pairs(p)),
        Mode::Float => collect(p, &tracked_pairs(p)),
    }
}

/// Pivot values `a_1^(1), …, a_n^(n)`.
pub fn pivots(table: &RhTable) -> Vec<Scalar> {
    table.pivots.iter().map(|p| p.value.clone()).collect()
}

/// Maps the first non-positive pivot class to a verdict.
pub(crate) fn judge(index: usize, class: SignClass, mode: Mode) -> Option<StabilityVerdict> {
    match (class, mode) {
        (SignClass::Positive, _) => None,
        (SignClass::Negative, _) => Some(StabilityVerdict::not_hurwitz(Some(index))),
        (SignClass::ZeroOrUncertain, Mode::Exact) => Some(StabilityVerdict::marginal(index)),
        (SignClass::ZeroOrUncertain, Mode::Float) => Some(StabilityVerdict::inconclusive(Some(index))),
    }
}

pub(crate) fn verdict_from_classes(
    classes: impl IntoIterator<Item = SignClass>,
    mode: Mode,
) -> StabilityVerdict {
    classes
        .into_iter()
        .enumerate()
        .find_map(|(i, class)| judge(i + 1, class, mode))
        .unwrap_or_else(StabilityVerdict::hurwitz)
}

impl RhTable {
    pub fn degree(&self) -> usize {
        self.polynomial.degree()
    }

    pub fn mode(&self) -> Mode {
        self.polynomial.mode()
    }

    pub fn pivot_values(&self) -> Vec<Scalar> {
        pivots(self)
    }

    pub fn verdict(&self, tol: Tolerance) -> StabilityVerdict {
        verdict_from_classes(self.pivots.iter().map(|p| p.sign(tol)), self.mode())
    }
}

fn short_circuit<T: TableEntry>(coeffs: &[(T, T)], mode: Mode, tol: Tolerance) -> StabilityVerdict {
    let pivots = Steps::new(coeffs).map(|step| match step {
        Step::Level(level, _) => level.pivot().sign(tol),
        Step::Final(t) => t.sign(tol),
    });
    verdict_from_classes(pivots, mode)
}

/// Generalized Routh-Hurwitz verdict at the default tolerance.
pub fn hurwitz_verdict(p: &ComplexPolynomial) -> StabilityVerdict {
    hurwitz_verdict_with(p, Tolerance::default())
}

/// Stops building the table at the first pivot that is not positive.
pub fn hurwitz_verdict_with(p: &ComplexPolynomial, tol: Tolerance) -> StabilityVerdict {
    match p.mode() {
        Mode::Exact => short_circuit(&exact_pairs(p), Mode::Exact, tol),
        Mode::Float => short_circuit(&tracked_pairs(p), Mode::Float, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ComplexCoefficient;
    use crate::verdict::Stability;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    fn poly(pairs: &[(i64, i64)]) -> ComplexPolynomial {
        ComplexPolynomial::from_integer_pairs(pairs).unwrap()
    }

    #[test]
    fn quadratic_example() {
        let t = build_table(&poly(&[(3, 0), (3, 1)]));
        assert_eq!(t.levels.len(), 1);
        assert_eq!(t.levels[0].row1, ints(&[3, 1]));
        assert_eq!(t.levels[0].row2, ints(&[-1, 9]));
        assert_eq!(t.pivot_values(), ints(&[3, 26]));
        assert_eq!(t.final_pivot, Scalar::from_integer(26));
        assert_eq!(t.scaling_log, vec![1.0]);
    }

    #[test]
    fn shaft_cubic_example() {
        let t = build_table(&poly(&[(4, 4), (10, 0), (1, 0)]));
        assert_eq!(t.pivot_values(), ints(&[4, 156, 23312]));
        assert_eq!(t.levels.len(), 2);
    }

    #[test]
    fn real_quartic_has_no_b_entries() {
        let t = build_table(&ComplexPolynomial::from_real_integers(&[2, 3, 2, 1]).unwrap());
        assert_eq!(t.pivots[1].value, Scalar::from_integer(8));
        for level in &t.levels {
            let (a_row, b_row): (Vec<_>, Vec<_>) = level
                .row1
                .iter()
                .zip(&level.row2)
                .enumerate()
                .map(|(j, (r1, r2))| if j % 2 == 0 { (r1, r2) } else { (r2, r1) })
                .unzip();
            assert!(b_row.iter().all(|b| b.is_zero()), "level {}", level.index);
            assert!(!a_row.is_empty());
        }
        assert!(t.verdict(Tolerance::default()).is_hurwitz());
    }

    #[test]
    fn linear_table() {
        let t = build_table(&poly(&[(1, 0)]));
        assert!(t.levels.is_empty());
        assert_eq!(t.pivot_values(), ints(&[1]));
    }

    #[test]
    fn verdict_examples() {
        let v = hurwitz_verdict(&poly(&[(-1, 0)]));
        assert_eq!(v, StabilityVerdict::not_hurwitz(Some(1)));
        assert!(hurwitz_verdict(&poly(&[(1, 1)])).is_hurwitz());
        let unstable = poly(&[(1, 1), (-2, 2)]);
        assert_eq!(build_table(&unstable).pivot_values(), ints(&[1, -4]));
        assert_eq!(hurwitz_verdict(&unstable), StabilityVerdict::not_hurwitz(Some(2)));
        assert!(hurwitz_verdict(&poly(&[(4, 4), (10, 0), (1, 0)])).is_hurwitz());
    }

    #[test]
    fn exact_zero_pivot_is_marginal() {
        let v = hurwitz_verdict(&poly(&[(0, 1)]));
        assert_eq!(v.stability, Stability::NotHurwitz);
        assert!(v.marginal);
        assert_eq!(v.first_failing_index, Some(1));
    }

    #[test]
    fn float_zero_pivot_is_inconclusive() {
        let p = ComplexPolynomial::from_monic(vec![ComplexCoefficient::from_complex64(
            num_complex::Complex64::new(0.0, 1.0),
        )])
        .unwrap();
        assert_eq!(hurwitz_verdict(&p), StabilityVerdict::inconclusive(Some(1)));
    }

    #[test]
    fn cancelling_pivot_exact_vs_float() {
        // a_2^(2) = a1^2 a2 + (a1 b1 - b2) b2 = 1 - 1 for s^2 + s + (1 + i)
        let p = poly(&[(1, 0), (1, 1)]);
        assert_eq!(hurwitz_verdict(&p), StabilityVerdict::marginal(2));
        let f = p.to_mode(Mode::Float).unwrap();
        assert_eq!(hurwitz_verdict(&f), StabilityVerdict::inconclusive(Some(2)));
    }

    #[test]
    fn short_circuit_agrees_with_full_table() {
        for pairs in [
            vec![(2, 1), (3, -1), (4, 2), (5, -3)],
            vec![(1, 0), (-1, 2), (3, 3)],
            vec![(5, 0), (0, 0), (0, 0), (0, 0), (1, 1)],
        ] {
            let p = poly(&pairs);
            let tol = Tolerance::default();
            assert_eq!(hurwitz_verdict_with(&p, tol), build_table(&p).verdict(tol));
        }
    }

    #[test]
    fn float_table_tracks_exact_pivots() {
        let p = poly(&[(4, 4), (10, 0), (1, 0)]);
        let f = build_table(&p.to_mode(Mode::Float).unwrap());
        assert_eq!(f.pivot_values(), ints(&[4, 156, 23312]));
        assert!(f.pivots.iter().all(|pv| pv.scale >= pv.value.abs_f64()));
    }
}
