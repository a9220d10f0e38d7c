//! Closed-form pivots of the degree-4 table expressed in the raw coefficients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;
use crate::routh::recurrence::TableRing;
use crate::routh::table::{exact_pairs, tracked_pairs, verdict_from_classes, TableEntry};
use crate::scalar::{Mode, Scalar, Tolerance};
use crate::verdict::StabilityVerdict;

/// `beta = a_2^(2)`, `gamma = a_3^(3)`, `final = a_4^(4)`; `epsilon = a_4^(2)`
/// and `eta = b_4^(3)` are the intermediate quantities of the derivation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuarticForms {
    pub beta: Scalar,
    pub gamma: Scalar,
    pub eta: Scalar,
    pub epsilon: Scalar,
    #[serde(rename = "final")]
    pub final_pivot: Scalar,
}

struct Forms<T> {
    beta: T,
    gamma: T,
    eta: T,
    epsilon: T,
    final_pivot: T,
}

fn forms<T: TableRing>(c: &[(T, T)]) -> Forms<T> {
    let (a1, b1) = (&c[0].0, &c[0].1);
    let (a2, b2) = (&c[1].0, &c[1].1);
    let (a3, b3) = (&c[2].0, &c[2].1);
    let (a4, b4) = (&c[3].0, &c[3].1);

    // u = a1 b1 - b2, w = a1 b3 - b4, d = a1 w - a3 u
    let u = a1.mul(b1).sub(b2);
    let w = a1.mul(b3).sub(b4);
    let d = a1.mul(&w).sub(&a3.mul(&u));
    let a1_sq = a1.mul(a1);

    // beta = a1^2 a2 - a1 a3 + a1 b1 b2 - b2^2
    let beta = a1_sq
        .mul(a2)
        .sub(&a1.mul(a3))
        .add(&a1.mul(b1).mul(b2))
        .sub(&b2.mul(b2));

    // epsilon = a1^2 a4 + b4 u
    let epsilon = a1_sq.mul(a4).add(&b4.mul(&u));

    // gamma = beta^2 a3 - beta a1^3 a4 - beta (a1 b4 + a3 b2) u + beta a1 b2 w - a1 d^2
    let beta_sq = beta.mul(&beta);
    let gamma = beta_sq
        .mul(a3)
        .sub(&beta.mul(&a1_sq).mul(a1).mul(a4))
        .sub(&beta.mul(&a1.mul(b4).add(&a3.mul(b2))).mul(&u))
        .add(&beta.mul(a1).mul(b2).mul(&w))
        .sub(&a1.mul(&d).mul(&d));

    // eta = beta^2 b4 - (beta b2 - a1 d) epsilon
    let eta = beta_sq
        .mul(b4)
        .sub(&beta.mul(b2).sub(&a1.mul(&d)).mul(&epsilon));

    // final = gamma^2 epsilon + eta (gamma a1 w - gamma a3 u - beta eta)
    let inner = gamma
        .mul(a1)
        .mul(&w)
        .sub(&gamma.mul(a3).mul(&u))
        .sub(&beta.mul(&eta));
    let final_pivot = gamma.mul(&gamma).mul(&epsilon).add(&eta.mul(&inner));

    Forms {
        beta,
        gamma,
        eta,
        epsilon,
        final_pivot,
    }
}

fn to_public<T: TableEntry>(f: &Forms<T>) -> QuarticForms {
    QuarticForms {
        beta: f.beta.to_scalar(),
        gamma: f.gamma.to_scalar(),
        eta: f.eta.to_scalar(),
        epsilon: f.epsilon.to_scalar(),
        final_pivot: f.final_pivot.to_scalar(),
    }
}

fn check_degree(p: &ComplexPolynomial) -> Result<()> {
    if p.degree() != 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            actual: p.degree(),
        });
    }
    Ok(())
}

pub fn quartic_closed_forms(p: &ComplexPolynomial) -> Result<QuarticForms> {
    check_degree(p)?;
    Ok(match p.mode() {
        Mode::Exact => to_public(&forms(&exact_pairs(p))),
        Mode::Float => to_public(&forms(&tracked_pairs(p))),
    })
}

/// Verdict from the sign chain `a_1, beta, gamma, final`.
pub fn quartic_verdict(p: &ComplexPolynomial, tol: Tolerance) -> Result<StabilityVerdict> {
    check_degree(p)?;
    fn chain<T: TableEntry>(c: &[(T, T)], mode: Mode, tol: Tolerance) -> StabilityVerdict {
        let f = forms(c);
        let classes = [&c[0].0, &f.beta, &f.gamma, &f.final_pivot].map(|t| t.sign(tol));
        verdict_from_classes(classes, mode)
    }
    Ok(match p.mode() {
        Mode::Exact => chain(&exact_pairs(p), Mode::Exact, tol),
        Mode::Float => chain(&tracked_pairs(p), Mode::Float, tol),
    })
}
