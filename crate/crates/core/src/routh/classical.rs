//! Classical division-based Routh array for real monic polynomials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;
use crate::routh::table::verdict_from_classes;
use crate::scalar::{robust_sign, Mode, Scalar, SignClass, Tolerance};
use crate::verdict::StabilityVerdict;

/// Rows for `s^n, s^(n-1), …, s^0`; row `m` has `⌊(n − m)/2⌋ + 1` entries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalRhTable {
    pub rows: Vec<Vec<Scalar>>,
    pub first_column: Vec<Scalar>,
    #[serde(skip)]
    scales: Vec<f64>,
}

impl ClassicalRhTable {
    pub fn degree(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn signs(&self, tol: Tolerance) -> Vec<SignClass> {
        self.first_column
            .iter()
            .zip(&self.scales)
            .map(|(x, s)| robust_sign(x, *s, tol))
            .collect()
    }
}

pub fn classical_table(real_coeffs: &[Scalar]) -> Result<ClassicalRhTable> {
    classical_table_with(real_coeffs, Tolerance::default())
}

/// Fails with `EarlyZero` as soon as a first-column entry is zero (or, in
/// float mode, indistinguishable from zero).
pub fn classical_table_with(real_coeffs: &[Scalar], tol: Tolerance) -> Result<ClassicalRhTable> {
    let n = real_coeffs.len();
    if n == 0 {
        return Err(Error::Degenerate("degree must be at least 1".into()));
    }
    let float = real_coeffs.iter().any(|c| c.mode() == Mode::Float);
    let coeff = |j: usize| -> Scalar {
        let c = if j == 0 { Scalar::one() } else { real_coeffs[j - 1].clone() };
        if float { Scalar::Float(c.to_f64()) } else { c }
    };
    let width = |m: usize| (n - m) / 2 + 1;

    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n + 1);
    let mut scales = Vec::with_capacity(n + 1);
    for m in 0..=1.min(n) {
        let row: Vec<Scalar> = (0..width(m))
            .map(|j| {
                let idx = 2 * j + m;
                if idx <= n { coeff(idx) } else { Scalar::zero() }
            })
            .collect();
        scales.push(row[0].abs_f64());
        rows.push(row);
    }
    for m in 2..=n {
        check_nonzero(&rows[m - 1][0], scales[m - 1], m - 1, tol)?;
        let (upper, lower) = (&rows[m - 2], &rows[m - 1]);
        let d = &lower[0];
        let get = |row: &Vec<Scalar>, j: usize| row.get(j).cloned().unwrap_or_else(Scalar::zero);
        let mut row = Vec::with_capacity(width(m));
        let mut lead_scale = 0.0;
        for j in 0..width(m) {
            let left = d * &get(upper, j + 1);
            let right = &upper[0] * &get(lower, j + 1);
            if j == 0 {
                lead_scale = (left.abs_f64() + right.abs_f64()) / d.abs_f64();
            }
            row.push((left - right) / d);
        }
        scales.push(lead_scale);
        rows.push(row);
    }
    check_nonzero(&rows[n][0], scales[n], n, tol)?;
    let first_column = rows.iter().map(|r| r[0].clone()).collect();
    Ok(ClassicalRhTable {
        rows,
        first_column,
        scales,
    })
}

fn check_nonzero(x: &Scalar, scale: f64, row: usize, tol: Tolerance) -> Result<()> {
    if robust_sign(x, scale, tol) == SignClass::ZeroOrUncertain {
        Err(Error::EarlyZero { row })
    } else {
        Ok(())
    }
}

pub fn classical_verdict(real_coeffs: &[Scalar]) -> StabilityVerdict {
    classical_verdict_with(real_coeffs, Tolerance::default())
}

/// Hurwitz iff every first-column entry is positive; `EarlyZero` maps to
/// inconclusive. `first_failing_index` is the first offending row (`s^n` is row 0).
pub fn classical_verdict_with(real_coeffs: &[Scalar], tol: Tolerance) -> StabilityVerdict {
    match classical_table_with(real_coeffs, tol) {
        Ok(table) => verdict_from_classes(table.signs(tol).into_iter().skip(1), Mode::Float),
        Err(Error::EarlyZero { row }) => StabilityVerdict::inconclusive(Some(row)),
        Err(_) => StabilityVerdict::inconclusive(None),
    }
}

/// Real parts of a polynomial with all `b_j = 0`.
pub fn real_coefficients(p: &ComplexPolynomial) -> Result<Vec<Scalar>> {
    if !p.is_real() {
        return Err(Error::NotReal);
    }
    Ok(p.coeffs().iter().map(|c| c.re.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Stability;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn quartic_first_column() {
        let t = classical_table(&ints(&[2, 3, 2, 1])).unwrap();
        assert_eq!(t.first_column, ints(&[1, 2, 2, 1, 1]));
        assert_eq!(t.rows[0], ints(&[1, 3, 1]));
        assert_eq!(t.rows[1], ints(&[2, 2]));
        assert_eq!(t.rows[2], ints(&[2, 1]));
        assert_eq!(t.rows.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 2, 1, 1]);
        assert!(classical_verdict(&ints(&[2, 3, 2, 1])).is_hurwitz());
    }

    #[test]
    fn quadratic_first_column() {
        let t = classical_table(&ints(&[1, 1])).unwrap();
        assert_eq!(t.first_column, ints(&[1, 1, 1]));
    }

    #[test]
    fn early_zero() {
        assert!(matches!(classical_table(&ints(&[0, 1, 1])), Err(Error::EarlyZero { row: 1 })));
        assert_eq!(classical_verdict(&ints(&[0, 1, 1])).stability, Stability::Inconclusive);
    }

    #[test]
    fn verdicts() {
        assert_eq!(classical_verdict(&ints(&[-1, 1])).stability, Stability::NotHurwitz);
        assert!(classical_verdict(&ints(&[5])).is_hurwitz());
    }

    #[test]
    fn degree_four_matches_textbook_conditions() {
        // a1 > 0, a1 a2 - a3 > 0, a4 > 0, (a1 a2 - a3) a3 - a1^2 a4 > 0
        for a1 in -2i64..=3 {
            for a2 in -1i64..=4 {
                for a3 in -1i64..=3 {
                    for a4 in -1i64..=2 {
                        let c = ints(&[a1, a2, a3, a4]);
                        let v = classical_verdict(&c);
                        if v.stability == Stability::Inconclusive {
                            continue;
                        }
                        let cond = a1 > 0
                            && a1 * a2 - a3 > 0
                            && a4 > 0
                            && (a1 * a2 - a3) * a3 - a1 * a1 * a4 > 0;
                        assert_eq!(v.is_hurwitz(), cond, "{a1} {a2} {a3} {a4}");
                    }
                }
            }
        }
    }

    #[test]
    fn not_real_rejected() {
        let p = ComplexPolynomial::from_integer_pairs(&[(1, 1)]).unwrap();
        assert!(matches!(real_coefficients(&p), Err(Error::NotReal)));
    }
}
