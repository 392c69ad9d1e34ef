//! Mellin transform pairs on ℝ₊ and on the discrete cocompact lattice
//! ϖ^ℤ, the semi-norm systems controlling them, Fourier decomposition
//! along the norm-one subgroup, and the ergodic averages behind the
//! constancy criterion for finite sums of oscillating characters.

use crate::quad::gauss_legendre_on;
use num_complex::Complex64;
use serde::Serialize;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MellinError {
    #[error("abscissa {0} is not to the right of the growth bound {1}")]
    AbscissaViolation(f64, f64),
    #[error("derivative order {0} exceeds the smoothness budget {1}")]
    BudgetExceeded(u32, u32),
}

pub type Result<T> = std::result::Result<T, MellinError>;

/// Function on ℝ₊ with a declared growth class c (all weighted sup-norms
/// with σ > c finite) and a numeric-differentiation budget.
#[derive(Clone)]
pub struct ContinuousFn {
    pub eval: Rc<dyn Fn(f64) -> Complex64>,
    pub growth_c: f64,
    pub max_deriv: u32,
}

impl ContinuousFn {
    pub fn new(f: impl Fn(f64) -> Complex64 + 'static, growth_c: f64, max_deriv: u32) -> Self {
        ContinuousFn { eval: Rc::new(f), growth_c, max_deriv }
    }
    /// Richardson-extrapolated central difference of order k ≤ 2.
    pub fn deriv(&self, k: u32, y: f64) -> Result<Complex64> {
        if k > self.max_deriv || k > 2 {
            return Err(MellinError::BudgetExceeded(k, self.max_deriv.min(2)));
        }
        let f = &self.eval;
        let val = |h: f64| -> Complex64 {
            match k {
                0 => f(y),
                1 => (f(y + h) - f(y - h)) / (2.0 * h),
                _ => (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h),
            }
        };
        if k == 0 {
            return Ok(f(y));
        }
        let h = (y.abs().max(1e-3)) * 1e-4;
        let a = val(h);
        let b = val(h / 2.0);
        Ok((4.0 * b - a) / 3.0)
    }
}

/// Function on the discrete group ϖ^ℤ (indexed by the exponent n) with
/// residue cardinality q and growth class c.
#[derive(Clone)]
pub struct DiscreteFn {
    pub eval: Rc<dyn Fn(i64) -> Complex64>,
    pub q: f64,
    pub growth_c: f64,
    /// summation window [-support, support] outside which the values are
    /// treated as (certified) negligible
    pub support: i64,
}

impl DiscreteFn {
    pub fn new(f: impl Fn(i64) -> Complex64 + 'static, q: f64, growth_c: f64, support: i64) -> Self {
        DiscreteFn { eval: Rc::new(f), q, growth_c, support }
    }
}

/// Mellin-side function: 2πi/log q-periodic (discrete pair) or a line
/// transform (continuous pair), holomorphic for Re s > c.
#[derive(Clone)]
pub struct PeriodicMellinFn {
    pub eval: Rc<dyn Fn(Complex64) -> Complex64>,
    /// Some(q) for the discrete pair, None for the continuous pair
    pub period_q: Option<f64>,
    pub growth_c: f64,
}

impl PeriodicMellinFn {
    pub fn new(
        m: impl Fn(Complex64) -> Complex64 + 'static,
        period_q: Option<f64>,
        growth_c: f64,
    ) -> Self {
        PeriodicMellinFn { eval: Rc::new(m), period_q, growth_c }
    }
}

// ------------------------------------------------------------- transforms

/// M f(s) = ∫₀^∞ f(y) y^s dy/y for Re s > c, via the substitution
/// y = e^u and composite Gauss panels with adaptive truncation.
pub fn mellin_fwd(f: &ContinuousFn, s: Complex64) -> Result<Complex64> {
    if s.re <= f.growth_c {
        return Err(MellinError::AbscissaViolation(s.re, f.growth_c));
    }
    let g = |u: f64| -> Complex64 { (f.eval)(u.exp()) * (s * u).exp() };
    // expand the window until the integrand is negligible at both ends
    let mut lo = -6.0f64;
    let mut hi = 6.0f64;
    while g(lo).norm() > 1e-14 && lo > -700.0 {
        lo -= 6.0;
    }
    while g(hi).norm() > 1e-14 && hi < 700.0 {
        hi += 6.0;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    // even-integer panel edges keep y = 1 (a common kink) on a boundary
    let panels = ((hi - lo) / 2.0).round() as usize;
    let width = 2.0;
    for p in 0..panels {
        let a = lo + p as f64 * width;
        for (x, w) in gauss_legendre_on(24, a, a + width) {
            acc += g(x) * w;
        }
    }
    Ok(acc)
}

/// Discrete forward transform M f(s) = Σ_n f(ϖⁿ) q^{−ns}.
pub fn mellin_fwd_discrete(f: &DiscreteFn, s: Complex64) -> Result<Complex64> {
    if s.re <= f.growth_c {
        return Err(MellinError::AbscissaViolation(s.re, f.growth_c));
    }
    let lq = f.q.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -f.support..=f.support {
        acc += (f.eval)(n) * (-(n as f64) * s * lq).exp();
    }
    Ok(acc)
}

/// Continuous inversion f_M(y) = ∫_{Re s = σ} M(s) y^{−s} ds / 2πi,
/// truncated where the integrand has decayed.
pub fn mellin_inv(m: &PeriodicMellinFn, y: f64, sigma: f64) -> Result<Complex64> {
    if sigma <= m.growth_c {
        return Err(MellinError::AbscissaViolation(sigma, m.growth_c));
    }
    assert!(m.period_q.is_none(), "use mellin_inv_discrete for the periodic pair");
    let integrand = |tau: f64| -> Complex64 {
        let s = Complex64::new(sigma, tau);
        (m.eval)(s) * (-s * y.ln()).exp()
    };
    let mut t_max = 30.0f64;
    while integrand(t_max).norm() > 1e-13 && t_max < 3000.0 {
        t_max *= 1.5;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let panels = ((t_max / 5.0).ceil() as usize).max(8);
    let width = 2.0 * t_max / panels as f64;
    for p in 0..panels {
        let a = -t_max + p as f64 * width;
        for (x, w) in gauss_legendre_on(24, a, a + width) {
            acc += integrand(x) * w;
        }
    }
    Ok(acc / (2.0 * std::f64::consts::PI))
}

/// Discrete inversion over one period:
/// f_M(ϖⁿ) = ∫₀^{2π/log q} M(σ+iτ) q^{n(σ+iτ)} log q dτ / 2π.
pub fn mellin_inv_discrete(m: &PeriodicMellinFn, n: i64, sigma: f64) -> Result<Complex64> {
    if sigma <= m.growth_c {
        return Err(MellinError::AbscissaViolation(sigma, m.growth_c));
    }
    let q = m.period_q.expect("discrete inversion needs a period");
    let lq = q.ln();
    let period = 2.0 * std::f64::consts::PI / lq;
    // trapezoid rule on a periodic integrand is spectrally accurate
    let k = 512usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..k {
        let tau = period * j as f64 / k as f64;
        let s = Complex64::new(sigma, tau);
        acc += (m.eval)(s) * (s * (n as f64) * lq).exp();
    }
    Ok(acc * Complex64::new(lq, 0.0) * period / k as f64 / (2.0 * std::f64::consts::PI))
}

// -------------------------------------------------------------- seminorms

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LIndex {
    L1,
    L2,
    LInf,
}

/// B_l^{k,σ}(f) = (∫₀^∞ |f^{(k)}(y) y^{σ+k}|^l dy/y)^{1/l}, with the
/// sup-version for l = ∞, on the continuous space.
pub fn seminorm_b_cont(f: &ContinuousFn, l: LIndex, k: u32, sigma: f64) -> Result<f64> {
    let weight = |y: f64, v: Complex64| v.norm() * y.powf(sigma + k as f64);
    match l {
        LIndex::LInf => {
            let mut sup = 0.0f64;
            let mut u = -30.0f64;
            while u <= 30.0 {
                let y = u.exp();
                sup = sup.max(weight(y, f.deriv(k, y)?));
                u += 0.02;
            }
            Ok(sup)
        }
        _ => {
            let le = if l == LIndex::L1 { 1.0 } else { 2.0 };
            let mut acc = 0.0f64;
            let (lo, hi) = (-30.0f64, 30.0f64);
            let panels = 60usize;
            let width = (hi - lo) / panels as f64;
            for p in 0..panels {
                let a = lo + p as f64 * width;
                for (u, w) in gauss_legendre_on(16, a, a + width) {
                    let y = u.exp();
                    let val = weight(y, f.deriv(k, y)?);
                    acc += val.powf(le) * w;
                }
            }
            Ok(acc.powf(1.0 / le))
        }
    }
}

/// Discrete B_l^σ(f) = (Σ_n q^{−nσl} |f(ϖⁿ)|^l)^{1/l}.
pub fn seminorm_b_disc(f: &DiscreteFn, l: LIndex, sigma: f64) -> f64 {
    let mut acc = 0.0f64;
    let mut sup = 0.0f64;
    for n in -f.support..=f.support {
        let v = (f.eval)(n).norm() * f.q.powf(-(n as f64) * sigma);
        sup = sup.max(v);
        match l {
            LIndex::L1 => acc += v,
            LIndex::L2 => acc += v * v,
            LIndex::LInf => {}
        }
    }
    match l {
        LIndex::L1 => acc,
        LIndex::L2 => acc.sqrt(),
        LIndex::LInf => sup,
    }
}

/// H_l^σ(M) on the periodic space: period-circle integral (l finite) or
/// max on the period (l = ∞).
pub fn seminorm_h(m: &PeriodicMellinFn, l: LIndex, sigma: f64) -> f64 {
    let q = m.period_q.expect("H-norms are computed on the periodic pair");
    let lq = q.ln();
    let period = 2.0 * std::f64::consts::PI / lq;
    let k = 1024usize;
    let mut acc = 0.0f64;
    let mut sup = 0.0f64;
    for j in 0..k {
        let tau = period * j as f64 / k as f64;
        let v = (m.eval)(Complex64::new(sigma, tau)).norm();
        sup = sup.max(v);
        match l {
            LIndex::L1 => acc += v,
            LIndex::L2 => acc += v * v,
            LIndex::LInf => {}
        }
    }
    let meas = lq * period / k as f64 / (2.0 * std::f64::consts::PI);
    match l {
        LIndex::L1 => acc * meas,
        LIndex::L2 => (acc * meas).sqrt(),
        LIndex::LInf => sup,
    }
}

// ---------------------------------------------------- F¹ decomposition

/// Fourier component along the norm-one subgroup. Over ℝ, F¹ = {±1} and
/// the components are the even/odd parts; over ℂ, F¹ is the unit circle
/// and the component of index n is the n-th Fourier mode in the angle.
pub enum F1Input {
    Real(Rc<dyn Fn(f64) -> Complex64>),
    Complex(Rc<dyn Fn(Complex64) -> Complex64>),
}

pub fn f1_decompose(f: &F1Input, index: i64, t: f64) -> Complex64 {
    match f {
        F1Input::Real(g) => {
            assert!(index == 0 || index == 1, "real characters are ±");
            let sign = if index == 0 { 1.0 } else { -1.0 };
            (g(t) + sign * g(-t)) / 2.0
        }
        F1Input::Complex(g) => {
            let k = 256usize;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..k {
                let th = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                let u = Complex64::new(0.0, th).exp();
                let xi = Complex64::new(0.0, index as f64 * th).exp();
                acc += g(t * u) * xi;
            }
            acc / k as f64
        }
    }
}

// ------------------------------------------------------ ergodic averages

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicAverage {
    pub value_re: f64,
    pub value_im: f64,
    pub bound: f64,
    pub frequency: f64,
}

/// (1/T)∫₀^T e(t·n⃗·θ⃗) dt in closed form, with the decay bound
/// 2/(T·|n⃗·θ⃗|) when the frequency is nonzero.
pub fn ergodic_average(theta: &[f64], n_vec: &[i64], t_max: f64) -> ErgodicAverage {
    assert!(t_max > 0.0 && theta.len() == n_vec.len());
    let freq: f64 = theta
        .iter()
        .zip(n_vec.iter())
        .map(|(th, &n)| th * n as f64)
        .sum();
    let value = if freq == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let z = Complex64::new(0.0, 2.0 * std::f64::consts::PI * freq * t_max).exp();
        (z - 1.0) / Complex64::new(0.0, 2.0 * std::f64::consts::PI * freq * t_max)
    };
    let bound = if freq == 0.0 {
        1.0
    } else {
        2.0 / (t_max * freq.abs()) / (2.0 * std::f64::consts::PI)
    };
    ErgodicAverage {
        value_re: value.re,
        value_im: value.im,
        bound,
        frequency: freq,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstancyReport {
    pub is_constant: bool,
    pub witness: Option<(f64, f64, f64)>,
}

/// Constancy criterion for f(x) = Σ a_k x^{iθ_k}: after merging equal
/// frequencies and dropping cancelled terms, f has a limit at +∞ (and is
/// then constant) iff only the zero frequency survives. When
/// non-constant, two sample points with a visible gap are returned.
pub fn detect_constant(terms: &[(Complex64, f64)]) -> ConstancyReport {
    let mut merged: Vec<(Complex64, f64)> = Vec::new();
    for (a, th) in terms {
        if let Some(slot) = merged.iter_mut().find(|(_, t)| t == th) {
            slot.0 += a;
        } else {
            merged.push((*a, *th));
        }
    }
    merged.retain(|(a, _)| a.norm() > 1e-14);
    let is_constant = merged.iter().all(|(_, th)| *th == 0.0);
    if is_constant {
        return ConstancyReport { is_constant: true, witness: None };
    }
    let f = |x: f64| -> Complex64 {
        merged
            .iter()
            .map(|(a, th)| a * Complex64::new(0.0, th * x.ln()).exp())
            .sum()
    };
    // oscillation witness by scanning
    let mut witness = None;
    let x1 = 10.0f64;
    let v1 = f(x1);
    let mut x = 10.5f64;
    while x < 1e6 {
        let gap = (f(x) - v1).norm();
        if gap > 1e-3 {
            witness = Some((x1, x, gap));
            break;
        }
        x *= 1.17;
    }
    ConstancyReport { is_constant: false, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn forward_transform_examples() {
        // e^{−y} ↦ Γ(s)
        let f = ContinuousFn::new(|y| c((-y).exp()), 0.0, 2);
        for s in [c(1.5), c(2.0), Complex64::new(2.5, 1.0)] {
            let lhs = mellin_fwd(&f, s).unwrap();
            let rhs = special_fn::gamma(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-8, "s = {s}: {lhs} vs {rhs}");
        }
        // min(1, y^{−3}) at s = 1: ∫₀¹ y dy/y + ∫₁^∞ y^{−2} dy = 1 + 1/2
        let g = ContinuousFn::new(|y| c(y.powf(-3.0).min(1.0)), 0.0, 0);
        let v = mellin_fwd(&g, c(1.0)).unwrap();
        assert!((v - 1.5).norm() < 1e-6, "{v}");
        // abscissa guard
        assert!(matches!(
            mellin_fwd(&f, c(-0.5)),
            Err(MellinError::AbscissaViolation(_, _))
        ));
        // discrete delta at n = 0 ↦ constant 1
        let d = DiscreteFn::new(|n| if n == 0 { c(1.0) } else { c(0.0) }, 2.0, -10.0, 8);
        assert!((mellin_fwd_discrete(&d, c(0.3)).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn inversion_round_trips() {
        // Γ at y = 1 gives e^{−1}
        let m = PeriodicMellinFn::new(|s| special_fn::gamma(s).unwrap(), None, 0.0);
        let v = mellin_inv(&m, 1.0, 1.5).unwrap();
        assert!((v - (-1.0f64).exp()).norm() < 1e-6, "{v}");
        // σ-independence of the continuous inversion
        let v2 = mellin_inv(&m, 1.0, 2.5).unwrap();
        assert!((v - v2).norm() < 1e-8);
        // discrete round trip on finitely supported data, exact to 1e−10
        let vals = [c(0.7), c(-1.3), c(2.4), c(0.05)];
        let d = DiscreteFn::new(
            move |n| {
                if (0..4).contains(&n) {
                    vals[n as usize]
                } else {
                    c(0.0)
                }
            },
            3.0,
            -10.0,
            8,
        );
        let dm = {
            let dd = d.clone();
            PeriodicMellinFn::new(
                move |s| mellin_fwd_discrete(&dd, s).unwrap(),
                Some(3.0),
                -10.0,
            )
        };
        for n in -2..6 {
            let back = mellin_inv_discrete(&dm, n, 0.4).unwrap();
            let orig = (d.eval)(n);
            assert!((back - orig).norm() < 1e-10, "n = {n}: {back} vs {orig}");
            // σ-independence
            let back2 = mellin_inv_discrete(&dm, n, 1.1).unwrap();
            assert!((back - back2).norm() < 1e-8);
        }
    }

    #[test]
    fn integration_by_parts_identity() {
        // M f(s) = (−1)^k/(s(s+1)⋯(s+k−1)) ∫ f^{(k)}(y) y^{s+k} dy/y
        let f = ContinuousFn::new(|y| c((-y).exp()), 0.0, 2);
        let s = c(1.7);
        let base = mellin_fwd(&f, s).unwrap();
        for k in 1u32..=2 {
            let fk = {
                let ff = f.clone();
                ContinuousFn::new(move |y| ff.deriv(k, y).unwrap(), 0.0, 0)
            };
            let shifted = mellin_fwd(&fk, s + k as f64).unwrap();
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..k {
                denom *= s + j as f64;
            }
            let rhs = shifted * (-1.0f64).powi(k as i32) / denom;
            assert!((base - rhs).norm() < 1e-6, "k = {k}: {base} vs {rhs}");
        }
        // budget guard
        assert!(matches!(
            f.deriv(3, 1.0),
            Err(MellinError::BudgetExceeded(3, 2))
        ));
    }

    #[test]
    fn seminorm_examples_and_inequalities() {
        // B_∞^{0,1}(e^{−y}) = sup y·e^{−y} = 1/e
        let f = ContinuousFn::new(|y| c((-y).exp()), 0.0, 2);
        let v = seminorm_b_cont(&f, LIndex::LInf, 0, 1.0).unwrap();
        assert!((v - 1.0 / std::f64::consts::E).abs() < 1e-4, "{v}");

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            // random finitely supported discrete f
            let q = [2.0, 3.0][rng.gen_range(0..2)];
            let w = rng.gen_range(2..6);
            let vals: Vec<Complex64> = (0..2 * w + 1)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let wl = w as i64;
            let d = DiscreteFn::new(
                move |n| {
                    if n.abs() <= wl {
                        vals[(n + wl) as usize]
                    } else {
                        c(0.0)
                    }
                },
                q,
                -10.0,
                wl + 2,
            );
            let sigma = rng.gen_range(-1.0..1.0);
            // B_∞^σ ≤ B_l^σ
            for l in [LIndex::L1, LIndex::L2] {
                assert!(
                    seminorm_b_disc(&d, LIndex::LInf, sigma)
                        <= seminorm_b_disc(&d, l, sigma) * (1.0 + 1e-12)
                );
            }
            let dm = {
                let dd = d.clone();
                PeriodicMellinFn::new(
                    move |s| mellin_fwd_discrete(&dd, s).unwrap(),
                    Some(q),
                    -10.0,
                )
            };
            // H_∞^σ(Mf) ≤ B_1^σ(f)
            assert!(
                seminorm_h(&dm, LIndex::LInf, sigma)
                    <= seminorm_b_disc(&d, LIndex::L1, sigma) * (1.0 + 1e-10)
            );
            // B_∞^σ(f_M) ≤ H_1^σ(M) (f_M here is f again by inversion)
            assert!(
                seminorm_b_disc(&d, LIndex::LInf, sigma)
                    <= seminorm_h(&dm, LIndex::L1, sigma) * (1.0 + 1e-8)
            );
            // explicit-constant forms from the comparison proofs:
            // B_l^σ(f)^l ≤ B_∞^{σ−ε}^l/(1−q^{−εl}) + B_∞^{σ+ε}^l·q^{−εl}/(1−q^{−εl})
            let eps = 0.25;
            for (l, le) in [(LIndex::L1, 1.0), (LIndex::L2, 2.0)] {
                let lhs = seminorm_b_disc(&d, l, sigma).powf(le);
                let bm = seminorm_b_disc(&d, LIndex::LInf, sigma - eps).powf(le);
                let bp = seminorm_b_disc(&d, LIndex::LInf, sigma + eps).powf(le);
                let geo = 1.0 / (1.0 - q.powf(-eps * le));
                let rhs = bm * geo + bp * q.powf(-eps * le) * geo;
                assert!(lhs <= rhs * (1.0 + 1e-10), "{lhs} vs {rhs}");
                // H_∞^σ ≤ (H_l^{σ+ε} + H_l^{σ−ε})/(ε log q)
                let hl = (seminorm_h(&dm, l, sigma + eps) + seminorm_h(&dm, l, sigma - eps))
                    / (eps * q.ln());
                assert!(
                    seminorm_h(&dm, LIndex::LInf, sigma) <= hl * (1.0 + 1e-8),
                    "H bound"
                );
            }
        }
    }

    #[test]
    fn f1_decomposition() {
        // even function on ℝ: odd part vanishes
        let fr = F1Input::Real(Rc::new(|t: f64| c(t * t + 1.0)));
        assert!(f1_decompose(&fr, 1, 2.3).norm() < 1e-14);
        // f(z) = z on ℂ: only the index −1 component, equal to t
        let fc = F1Input::Complex(Rc::new(|z: Complex64| z));
        for n in -3i64..=3 {
            let comp = f1_decompose(&fc, n, 1.7);
            if n == -1 {
                assert!((comp - 1.7).norm() < 1e-12);
            } else {
                assert!(comp.norm() < 1e-12, "n = {n}: {comp}");
            }
        }
        // reconstruction Σ f_n(t)·e^{−inθ} for a smooth function
        let g = |z: Complex64| (z + z.conj() * z * 0.3).exp();
        let fg = F1Input::Complex(Rc::new(g));
        let (t, th) = (0.8, 1.1);
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -32i64..=32 {
            acc += f1_decompose(&fg, n, t) * Complex64::new(0.0, -(n as f64) * th).exp();
        }
        let direct = g(t * Complex64::new(0.0, th).exp());
        assert!((acc - direct).norm() < 1e-6, "{acc} vs {direct}");
    }

    #[test]
    fn ergodic_average_bound() {
        // constant character
        let a = ergodic_average(&[1.0, 2.0], &[2, -1], 50.0);
        assert!((Complex64::new(a.value_re, a.value_im) - 1.0).norm() < 1e-15);
        // unit frequency at T = 100: |avg| = |e(100)−1|/(2π·100) ≤ 2/(2π·100)
        let a = ergodic_average(&[1.0], &[1], 100.0);
        let v = Complex64::new(a.value_re, a.value_im).norm();
        assert!(v <= a.bound + 1e-15);
        assert!(a.bound <= 2.0 / 100.0);
        // decay ~ 1/T along a grid
        let t_grid = [10.0, 100.0, 1000.0];
        let vals: Vec<f64> = t_grid
            .iter()
            .map(|&t| {
                let a = ergodic_average(&[1.0, 2.0f64.sqrt()], &[2, 0], t);
                Complex64::new(a.value_re, a.value_im).norm() * t
            })
            .collect();
        let max = vals.iter().cloned().fold(0.0, f64::max);
        assert!(max <= 2.0 / (2.0 * std::f64::consts::PI * 2.0) + 0.2, "{vals:?}");
        // 1000 randomized bound checks
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let dim = rng.gen_range(1..4);
            let theta: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let nv: Vec<i64> = (0..dim).map(|_| rng.gen_range(-5..6)).collect();
            let t = rng.gen_range(0.5..500.0);
            let a = ergodic_average(&theta, &nv, t);
            let v = Complex64::new(a.value_re, a.value_im).norm();
            assert!(v <= a.bound + 1e-12, "bound violated: {v} > {}", a.bound);
        }
    }

    #[test]
    fn constancy_detection() {
        let r = detect_constant(&[(c(5.0), 0.0)]);
        assert!(r.is_constant && r.witness.is_none());
        let r = detect_constant(&[(c(1.0), 1.0)]);
        assert!(!r.is_constant);
        let (x1, x2, gap) = r.witness.expect("oscillation witness");
        let f = |x: f64| Complex64::new(0.0, x.ln()).exp();
        assert!((f(x1) - f(x2)).norm() >= gap * 0.99);
        // cancelling pair collapses to the constant zero
        let r = detect_constant(&[(c(1.0), 1.0), (c(-1.0), 1.0)]);
        assert!(r.is_constant);
    }
}
