use num_complex::Complex64;
use serde::Serialize;

use crate::poly::{ComplexCoefficient, ComplexPolynomial};
use crate::scalar::{robust_sign, Mode, Scalar, Tolerance};
use crate::verdict::StabilityVerdict;

/// Rotating shaft `x'' + (2kω + 2iΩ) x' + (ω² − Ω²) x = f` under the PI law
/// `f = k_p (x − x_ref) + k_I ℓ`, `ℓ' = x − x_ref`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShaftParams {
    /// Damping coefficient.
    pub k: Scalar,
    /// Undamped oscillation frequency.
    pub omega: Scalar,
    /// Angular velocity of the shaft.
    pub big_omega: Scalar,
    pub kp: Scalar,
    pub ki: Scalar,
    pub x_ref: ComplexCoefficient,
}

impl ShaftParams {
    pub fn new(k: Scalar, omega: Scalar, big_omega: Scalar, kp: Scalar, ki: Scalar) -> Self {
        ShaftParams {
            k,
            omega,
            big_omega,
            kp,
            ki,
            x_ref: ComplexCoefficient::one(),
        }
    }

    /// `(k, ω, Ω) = (1, 2, 2)` with the given gains.
    pub fn reference_rotor(ki: i64, kp: i64) -> Self {
        ShaftParams::new(
            Scalar::from_integer(1),
            Scalar::from_integer(2),
            Scalar::from_integer(2),
            Scalar::from_integer(kp),
            Scalar::from_integer(ki),
        )
    }

    pub fn with_gains(&self, ki: Scalar, kp: Scalar) -> Self {
        ShaftParams {
            ki,
            kp,
            ..self.clone()
        }
    }

    pub fn with_x_ref(&self, x_ref: ComplexCoefficient) -> Self {
        ShaftParams {
            x_ref,
            ..self.clone()
        }
    }

    fn two_k_omega(&self) -> Scalar {
        &Scalar::from_integer(2) * &(&self.k * &self.omega)
    }

    /// `ω² − Ω² − k_p`
    fn stiffness(&self) -> Scalar {
        &(&self.omega.square() - &self.big_omega.square()) - &self.kp
    }
}

/// `d/dt (x₁, x₂, ℓ) = A (x₁, x₂, ℓ) − forcing`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedLoopModel {
    pub matrix: [[ComplexCoefficient; 3]; 3],
    pub forcing: [ComplexCoefficient; 3],
    pub params: ShaftParams,
}

impl ClosedLoopModel {
    pub fn new(params: &ShaftParams) -> Self {
        let zero = ComplexCoefficient::zero;
        let one = ComplexCoefficient::one;
        let spring = &(&params.kp + &params.big_omega.square()) - &params.omega.square();
        let damping = ComplexCoefficient::new(
            -params.two_k_omega(),
            -(&Scalar::from_integer(2) * &params.big_omega),
        );
        let matrix = [
            [zero(), one(), zero()],
            [ComplexCoefficient::real(spring), damping, ComplexCoefficient::real(params.ki.clone())],
            [one(), zero(), zero()],
        ];
        let forcing = [
            zero(),
            params.x_ref.scale(&params.kp),
            params.x_ref.clone(),
        ];
        ClosedLoopModel {
            matrix,
            forcing,
            params: params.clone(),
        }
    }

    /// `det(sI − A)` expanded over all six permutations.
    pub fn characteristic_polynomial(&self) -> ComplexPolynomial {
        // entries of sI − A as ascending polynomials in s
        let entry = |i: usize, j: usize| -> Vec<ComplexCoefficient> {
            let c = -&self.matrix[i][j];
            if i == j {
                vec![c, ComplexCoefficient::one()]
            } else {
                vec![c]
            }
        };
        const PERMS: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        let mut det = vec![ComplexCoefficient::zero(); 4];
        for (perm, sign) in PERMS {
            let term = (0..3).fold(vec![ComplexCoefficient::one()], |acc, i| {
                poly_mul(&acc, &entry(i, perm[i]))
            });
            let sign = Scalar::from_integer(sign);
            for (d, t) in det.iter_mut().zip(&term) {
                *d = &*d + &t.scale(&sign);
            }
        }
        debug_assert_eq!(det[3], ComplexCoefficient::one());
        ComplexPolynomial::from_monic(vec![det[2].clone(), det[1].clone(), det[0].clone()])
            .expect("cubic")
    }

    pub fn matrix_f64(&self) -> [[Complex64; 3]; 3] {
        self.matrix.clone().map(|row| row.map(|c| c.to_complex64()))
    }

    pub fn forcing_f64(&self) -> [Complex64; 3] {
        self.forcing.clone().map(|c| c.to_complex64())
    }

    /// Fixed point `(x_ref, 0, ℓ*)` with `k_I ℓ* = (ω² − Ω²) x_ref`; `None`
    /// when `k_I = 0` and no integral state balances the spring term.
    pub fn equilibrium(&self) -> Option<[ComplexCoefficient; 3]> {
        let p = &self.params;
        let spring = &p.omega.square() - &p.big_omega.square();
        let rhs = p.x_ref.scale(&spring);
        let ell = if p.ki.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
            ComplexCoefficient::zero()
        } else {
            rhs.checked_div(&ComplexCoefficient::real(p.ki.clone()))?
        };
        Some([p.x_ref.clone(), ComplexCoefficient::zero(), ell])
    }
}

fn poly_mul(a: &[ComplexCoefficient], b: &[ComplexCoefficient]) -> Vec<ComplexCoefficient> {
    let mut out = vec![ComplexCoefficient::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `s³ + (2kω + 2iΩ) s² + (ω² − Ω² − k_p) s − k_I`.
pub fn characteristic_polynomial(params: &ShaftParams) -> ComplexPolynomial {
    let float = [&params.k, &params.omega, &params.big_omega, &params.kp, &params.ki]
        .iter()
        .any(|s| s.mode() == Mode::Float);
    let zero = || if float { Scalar::Float(0.0) } else { Scalar::zero() };
    ComplexPolynomial::from_monic(vec![
        ComplexCoefficient::new(params.two_k_omega(), &Scalar::from_integer(2) * &params.big_omega),
        ComplexCoefficient::new(params.stiffness(), zero()),
        ComplexCoefficient::new(-&params.ki, zero()),
    ])
    .expect("cubic")
}

/// The three stability conditions in the gains:
/// `2kω`, `2kω·A` and `−8 k_I² kωΩ² − k_I A²` with `A = 2kω(ω² − Ω² − k_p) + k_I`.
pub fn shaft_conditions(params: &ShaftParams) -> [Scalar; 3] {
    let two_k_omega = params.two_k_omega();
    let a = &(&two_k_omega * &params.stiffness()) + &params.ki;
    let c1 = two_k_omega.clone();
    let c2 = &two_k_omega * &a;
    let eight = Scalar::from_integer(8);
    let kw = &params.k * &params.omega;
    let c3 = &(-&(&(&eight * &params.ki.square()) * &(&kw * &params.big_omega.square())))
        - &(&params.ki * &a.square());
    [c1, c2, c3]
}

/// Verdict from the signs of the three conditions, read as a pivot chain.
pub fn conditions_verdict(conditions: &[Scalar; 3], tol: Tolerance) -> StabilityVerdict {
    let mode = if conditions.iter().any(|c| c.mode() == Mode::Float) {
        Mode::Float
    } else {
        Mode::Exact
    };
    crate::routh::verdict_from_classes(conditions.iter().map(|c| robust_sign(c, 0.0, tol)), mode)
}
