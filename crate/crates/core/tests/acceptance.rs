//! Acceptance checks. Runs without the libtest harness so that every check
//! prints exactly one PASS/FAIL line; exits non-zero if any check fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hurwitz::routh::{classical_table, classical_verdict, real_coefficients};
use hurwitz::shaft::{shaft_conditions, simulate_closed_loop, sweep_grid, CellClass, ShaftParams, SweepConfig};
use hurwitz::{
    all_roots, build_table, hurwitz_verdict, oracle_verdict, quartic_closed_forms, ComplexCoefficient,
    ComplexPolynomial, Error, Scalar, Stability,
};

const ORACLE_MARGIN: f64 = 1e-7;
const ABSCISSA_FILTER: f64 = 1e-6;
const SWEEP_MARGIN: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{}; {:.3?} (limit {:?})", out.detail, elapsed, limit);
    out.pass &= elapsed < limit;
    out
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_integer(x)).collect()
}

fn rational(rng: &mut ChaCha8Rng, max: i64) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-max..=max), rng.gen_range(1..=4))
}

fn random_integer_poly(rng: &mut ChaCha8Rng, degree: usize, complex: bool) -> ComplexPolynomial {
    let coeffs = (0..degree)
        .map(|_| {
            let im = if complex { rng.gen_range(-9..=9) } else { 0 };
            ComplexCoefficient::from_integers(rng.gen_range(-9..=9), im)
        })
        .collect();
    ComplexPolynomial::from_monic(coeffs).unwrap()
}

/// Monic polynomial with the given exact roots.
fn from_roots(roots: &[ComplexCoefficient]) -> ComplexPolynomial {
    let mut c = vec![ComplexCoefficient::one()];
    for r in roots {
        let mut next = c.clone();
        next.push(ComplexCoefficient::zero());
        for j in 1..next.len() {
            next[j] = &next[j] - &(r * &c[j - 1]);
        }
        c = next;
    }
    ComplexPolynomial::from_monic(c[1..].to_vec()).unwrap()
}

/// Rational roots, mostly in the left half-plane, occasionally to the right.
fn random_root(rng: &mut ChaCha8Rng, rhp_chance: f64) -> (Scalar, Scalar) {
    let re = Scalar::from_ratio(rng.gen_range(1..=12), rng.gen_range(1..=4));
    let re = if rng.gen_bool(rhp_chance) { re } else { -re };
    (re, rational(rng, 12))
}

fn random_real_rooted(rng: &mut ChaCha8Rng, degree: usize) -> ComplexPolynomial {
    let rhp = if rng.gen_bool(0.5) { 0.0 } else { 0.3 };
    let mut roots = Vec::new();
    while roots.len() < degree {
        let (re, im) = random_root(rng, rhp);
        if degree - roots.len() >= 2 && rng.gen_bool(0.5) {
            roots.push(ComplexCoefficient::new(re.clone(), im.clone()));
            roots.push(ComplexCoefficient::new(re, -im));
        } else {
            roots.push(ComplexCoefficient::real(re));
        }
    }
    from_roots(&roots)
}

fn random_complex_rooted(rng: &mut ChaCha8Rng, degree: usize) -> ComplexPolynomial {
    let rhp = if rng.gen_bool(0.5) { 0.0 } else { 0.25 };
    let roots: Vec<_> = (0..degree)
        .map(|_| {
            let (re, im) = random_root(rng, rhp);
            ComplexCoefficient::new(re, im)
        })
        .collect();
    from_roots(&roots)
}

fn criterion_1() -> Outcome {
    let params = ShaftParams::reference_rotor(-1, -10);
    let poly = hurwitz::shaft::characteristic_polynomial(&params);
    // warm-up outside the timed region
    let _ = build_table(&poly);
    timed(Duration::from_millis(1), || {
        let pivots = build_table(&poly).pivot_values();
        let conditions = shaft_conditions(&params);
        let factor = &Scalar::from_integer(4) * &(&params.k * &params.omega).square();
        let pass = pivots == ints(&[4, 156, 23312])
            && conditions.to_vec() == ints(&[4, 156, 1457])
            && pivots[2] == &factor * &conditions[2];
        let show: Vec<String> = pivots.iter().map(|p| p.to_string()).collect();
        ok(pass, format!("pivots ({}), conditions (4, 156, 1457), 23312 = 16 * 1457", show.join(", ")))
    })
}

fn criterion_2(rng: &mut ChaCha8Rng) -> Outcome {
    let polys: Vec<_> = (0..1000).map(|_| random_integer_poly(rng, 4, true)).collect();
    timed(Duration::from_secs(1), || {
        let mismatches = polys
            .iter()
            .filter(|p| {
                let f = quartic_closed_forms(p).unwrap();
                let t = build_table(p).pivot_values();
                f.beta != t[1] || f.gamma != t[2] || f.final_pivot != t[3]
            })
            .count();
        ok(mismatches == 0, format!("{mismatches}/1000 quartics with beta/gamma/final != table pivots"))
    })
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut polys = Vec::new();
    let mut skipped = 0;
    while polys.len() < 1000 {
        let degree = rng.gen_range(2..=8);
        let p = if rng.gen_bool(0.5) {
            random_real_rooted(rng, degree)
        } else {
            random_integer_poly(rng, degree, false)
        };
        match classical_table(&real_coefficients(&p).unwrap()) {
            Err(Error::EarlyZero { .. }) => skipped += 1,
            _ => polys.push(p),
        }
    }
    timed(Duration::from_secs(30), || {
        let mut disagreements = 0;
        let mut stable = 0;
        for p in &polys {
            let g = hurwitz_verdict(p).stability;
            let c = classical_verdict(&real_coefficients(p).unwrap()).stability;
            let o = oracle_verdict(p, ORACLE_MARGIN).stability;
            if g != c || g != o {
                disagreements += 1;
            }
            stable += (g == Stability::Hurwitz) as usize;
        }
        ok(
            disagreements == 0,
            format!("{disagreements}/1000 disagreements ({stable} Hurwitz, {skipped} EarlyZero skipped)"),
        )
    })
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Outcome {
    let mut polys = Vec::new();
    let mut filtered = 0;
    while polys.len() < 2000 {
        let degree = if polys.len() % 2 == 0 {
            [1, 3, 5, 7][rng.gen_range(0..4)]
        } else {
            rng.gen_range(1..=8)
        };
        let p = if rng.gen_bool(0.5) {
            random_complex_rooted(rng, degree)
        } else {
            random_integer_poly(rng, degree, true)
        };
        match all_roots(&p, 1e-13).abscissa() {
            Some(x) if x.abs() > ABSCISSA_FILTER => polys.push(p),
            _ => filtered += 1,
        }
    }
    let odd = polys.iter().filter(|p| p.degree() % 2 == 1).count();
    timed(Duration::from_secs(60), || {
        let mut disagreements = 0;
        let mut stable = 0;
        for p in &polys {
            let g = hurwitz_verdict(p).stability;
            if g != oracle_verdict(p, ORACLE_MARGIN).stability {
                disagreements += 1;
            }
            stable += (g == Stability::Hurwitz) as usize;
        }
        ok(
            disagreements == 0 && odd >= 800,
            format!("{disagreements}/2000 disagreements ({odd} odd degree, {stable} Hurwitz, {filtered} near-axis filtered)"),
        )
    })
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut config = SweepConfig::default_window(ShaftParams::reference_rotor(0, 0));
        config.margin = SWEEP_MARGIN;
        let grid = sweep_grid(&config).unwrap();
        let s = grid.summary();
        let stray = grid
            .cells
            .iter()
            .filter(|c| c.class == CellClass::Stable && c.ki.to_f64() >= 0.0)
            .count();
        ok(
            s.cells == 40000 && s.disagreements == 0 && s.stable > 0 && stray == 0,
            format!(
                "{} cells: {} stable, {} unstable, {} boundary, {} disagreements, {} stable cells with k_I >= 0",
                s.cells, s.stable, s.unstable, s.boundary, s.disagreements, stray
            ),
        )
    })
}

fn criterion_6() -> Outcome {
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    timed(Duration::from_secs(5), || {
        let stable = simulate_closed_loop(&ShaftParams::reference_rotor(-1, -10), ZERO, ZERO, ZERO, 60.0, 0.01)
            .unwrap();
        let residual = (stable.final_state().state[0] - 1.0).norm();
        let blow_up = simulate_closed_loop(&ShaftParams::reference_rotor(1, 0), ZERO, ZERO, ZERO, 60.0, 0.01)
            .map(|t| t.first_time_norm_exceeds(1e6))
            .unwrap_or_else(|e| match e {
                Error::Divergence { time } => Some(time),
                _ => None,
            });
        ok(
            residual <= 1e-3 && blow_up.is_some_and(|t| t < 60.0),
            format!("|x1(60) - 1| = {residual:.2e} (limit 1e-3); unstable norm > 1e6 at t = {blow_up:?}"),
        )
    })
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    let mut conj_fail = 0;
    let mut scale_fail = 0;
    for _ in 0..500 {
        let degree = rng.gen_range(1..=8);
        let p = random_integer_poly(rng, degree, true);
        if hurwitz_verdict(&p) != hurwitz_verdict(&p.conjugate()) {
            conj_fail += 1;
        }
        let c = loop {
            let c = ComplexCoefficient::new(rational(rng, 9), rational(rng, 9));
            if !c.is_zero() {
                break c;
            }
        };
        let scaled: Vec<_> = p.coeffs().iter().map(|x| &c * x).collect();
        let q = ComplexPolynomial::monicize(&c, &scaled).unwrap();
        if build_table(&q).pivot_values() != build_table(&p).pivot_values() {
            scale_fail += 1;
        }
    }
    ok(
        conj_fail == 0 && scale_fail == 0,
        format!("{conj_fail}/500 conjugation failures, {scale_fail}/500 scaling failures"),
    )
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let checks: Vec<(&str, Outcome)> = vec![
        ("1 shaft table reproduction", criterion_1()),
        ("2 quartic closed forms", criterion_2(&mut rng)),
        ("3 classical recovery", criterion_3(&mut rng)),
        ("4 oracle equivalence", criterion_4(&mut rng)),
        ("5 gain-plane map", criterion_5()),
        ("6 regulation", criterion_6()),
        ("7 conjugation and scaling", criterion_7(&mut rng)),
    ];
    let mut failed = 0;
    for (name, outcome) in &checks {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("acceptance {name}: {tag} ({})", outcome.detail);
        failed += !outcome.pass as usize;
    }
    if failed > 0 {
        eprintln!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
