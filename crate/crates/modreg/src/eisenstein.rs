//! The level-one spherical real-analytic Eisenstein series in classical
//! coordinates: evaluation by Fourier–Bessel expansion, s-derivatives by
//! Cauchy circles, the regularized variant holomorphic at the singular
//! point, Hecke operators, constant terms, truncation-friendly reduction
//! to the fundamental domain, and symbolic exponent sets of products.
//!
//! Calibration: the spectral parameter `s` relates to the classical
//! exponent by w = 1/2 + s, so E(s) is E(z, 1/2+s) = Σ Im(γz)^{1/2+s}.
//! The regularized series is E^reg(s) = E(s) − λ̃(s) with
//! λ̃(s) = Λ(1−2s)/Λ(1+2s); it is holomorphic at s = 1/2.

use crate::laurent::{self, TruncatedLaurent};
use crate::regularize::{ExponentSet, ExponentTerm};
use crate::special_fn::{bessel_k, completed_lambda, lambda_tilde};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EisError {
    #[error("spectral parameter {0} is at (or too close to) a pole")]
    Pole(Complex64),
    #[error("requested tolerance unreachable: {0}")]
    Convergence(String),
    #[error(transparent)]
    Special(#[from] crate::special_fn::SpecialFnError),
}

pub type Result<T> = std::result::Result<T, EisError>;

/// A point x + iy, y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "point must lie in the upper half-plane");
        Self { x, y }
    }
}

/// Which Eisenstein object: parameter s0, derivative order, and whether
/// the λ̃-subtracted (regularized) variant is meant.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EisensteinSpec {
    pub s0: Complex64,
    pub deriv_order: u32,
    pub regularized: bool,
}

/// Integer matrix [[a,b],[c,d]] acting by Möbius transformations.
pub type GammaMatrix = [[i64; 2]; 2];

pub fn apply_gamma(m: &GammaMatrix, z: UpperHalfPoint) -> UpperHalfPoint {
    let (a, b, c, d) = (m[0][0] as f64, m[0][1] as f64, m[1][0] as f64, m[1][1] as f64);
    let den = (c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y;
    UpperHalfPoint {
        x: ((a * z.x + b) * (c * z.x + d) + a * c * z.y * z.y) / den,
        y: z.y / den,
    }
}

/// Standard SL₂(ℤ) reduction: returns the representative with |x| ≤ 1/2,
/// x² + y² ≥ 1 and the matrix mapping the input to it.
pub fn reduce_to_fundamental_domain(z: UpperHalfPoint) -> (UpperHalfPoint, GammaMatrix) {
    let mut x = z.x;
    let mut y = z.y;
    let mut m: GammaMatrix = [[1, 0], [0, 1]];
    for _ in 0..10_000 {
        // translate: x into [-1/2, 1/2]
        let k = x.round();
        if k != 0.0 {
            x -= k;
            let ki = k as i64;
            m = [[m[0][0] - ki * m[1][0], m[0][1] - ki * m[1][1]], m[1]];
        }
        let n2 = x * x + y * y;
        if n2 >= 1.0 - 1e-15 {
            break;
        }
        // invert: z ↦ -1/z
        let nx = -x / n2;
        let ny = y / n2;
        m = [[-m[1][0], -m[1][1]], m[0]];
        x = nx;
        y = ny;
    }
    (UpperHalfPoint { x, y }, m)
}

/// Ht(z): the maximal imaginary part over the Γ-orbit, i.e. the
/// y-coordinate of the reduced representative.
pub fn height(z: UpperHalfPoint) -> f64 {
    reduce_to_fundamental_domain(z).0.y
}

const POLE_EPS: f64 = 1e-9;

fn divisor_sigma(n: usize, expo: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += Complex64::new(d as f64, 0.0).powc(expo);
            let e = n / d;
            if e != d {
                acc += Complex64::new(e as f64, 0.0).powc(expo);
            }
        }
        d += 1;
    }
    acc
}

/// Per-parameter evaluator of the classical series E(z, w), w = 1/2 + s,
/// caching divisor sums and the per-height Fourier coefficient rows so
/// that grids sharing y-values are cheap.
pub struct EisBasis {
    pub s: Complex64,
    w: Complex64,
    c_w: Complex64,
    inv_xi: Complex64,
    identically_zero: bool,
    sigma: RwLock<Vec<Complex64>>, // σ_{1−2w}(n), 1-based backing at index n−1
    rows: RwLock<HashMap<u64, Arc<Vec<Complex64>>>>,
}

impl EisBasis {
    pub fn new(s: Complex64) -> Result<Self> {
        if (s - Complex64::new(0.5, 0.0)).norm() < POLE_EPS
            || (s + Complex64::new(0.5, 0.0)).norm() < POLE_EPS
        {
            return Err(EisError::Pole(s));
        }
        let w = Complex64::new(0.5, 0.0) + s;
        if s.norm() < 1e-13 {
            return Ok(Self {
                s,
                w,
                c_w: Complex64::new(-1.0, 0.0),
                inv_xi: Complex64::new(0.0, 0.0),
                identically_zero: true,
                sigma: RwLock::new(Vec::new()),
                rows: RwLock::new(HashMap::new()),
            });
        }
        let xi_2w = completed_lambda(2.0 * w)?;
        let xi_2w_m1 = completed_lambda(2.0 * w - 1.0)?;
        Ok(Self {
            s,
            w,
            c_w: xi_2w_m1 / xi_2w,
            inv_xi: 1.0 / xi_2w,
            identically_zero: false,
            sigma: RwLock::new(Vec::new()),
            rows: RwLock::new(HashMap::new()),
        })
    }

    /// Constant-term coefficient c(w) = ξ(2w−1)/ξ(2w) = λ̃(s).
    pub fn c_w(&self) -> Complex64 {
        self.c_w
    }

    fn sigma_up_to(&self, n: usize) -> Vec<Complex64> {
        {
            let cache = self.sigma.read().unwrap();
            if cache.len() >= n {
                return cache[..n].to_vec();
            }
        }
        let mut cache = self.sigma.write().unwrap();
        let expo = Complex64::new(1.0, 0.0) - 2.0 * self.w;
        while cache.len() < n {
            let k = cache.len() + 1;
            cache.push(divisor_sigma(k, expo));
        }
        cache[..n].to_vec()
    }

    fn n_terms(&self, y: f64) -> usize {
        let by_spec = ((self.w.norm() + 10.0) / y).ceil() as usize + 10;
        // K_ν(x) underflows long before x = 700
        let by_underflow = (700.0 / (TAU * y)).ceil() as usize + 1;
        by_spec.min(by_underflow).max(1)
    }

    /// Fourier-coefficient row at height y: v_n = (4√y/ξ(2w)) n^{w−1/2}
    /// σ_{1−2w}(n) K_{w−1/2}(2πny).
    fn row(&self, y: f64) -> Arc<Vec<Complex64>> {
        let key = y.to_bits();
        if let Some(r) = self.rows.read().unwrap().get(&key) {
            return r.clone();
        }
        let n_max = self.n_terms(y);
        let sig = self.sigma_up_to(n_max);
        let nu = self.w - 0.5;
        let pref = 4.0 * y.sqrt() * self.inv_xi;
        let mut v = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let x = TAU * n as f64 * y;
            let k = if x > 700.0 {
                Complex64::new(0.0, 0.0)
            } else {
                bessel_k(nu, x).expect("x > 0")
            };
            v.push(pref * Complex64::new(n as f64, 0.0).powc(nu) * sig[n - 1] * k);
        }
        let arc = Arc::new(v);
        self.rows.write().unwrap().insert(key, arc.clone());
        arc
    }

    /// E(z, 1/2+s) at an already-reduced point (no Γ-reduction applied).
    pub fn eval_reduced(&self, z: UpperHalfPoint) -> Complex64 {
        if self.identically_zero {
            return Complex64::new(0.0, 0.0);
        }
        let y = z.y;
        let ypw = Complex64::new(y, 0.0).powc(self.w);
        let ypw1 = Complex64::new(y, 0.0).powc(Complex64::new(1.0, 0.0) - self.w);
        let mut acc = ypw + self.c_w * ypw1;
        for (i, v) in self.row(y).iter().enumerate() {
            acc += v * (TAU * (i + 1) as f64 * z.x).cos();
        }
        acc
    }

    pub fn eval(&self, z: UpperHalfPoint) -> Complex64 {
        let (zr, _) = reduce_to_fundamental_domain(z);
        self.eval_reduced(zr)
    }

    /// Λ^T E: E minus its full constant term wherever the reduced height
    /// exceeds T.
    pub fn eval_truncated(&self, z: UpperHalfPoint, big_t: f64) -> Complex64 {
        let (zr, _) = reduce_to_fundamental_domain(z);
        let mut v = self.eval_reduced(zr);
        if zr.y > big_t && !self.identically_zero {
            let y = zr.y;
            v -= Complex64::new(y, 0.0).powc(self.w)
                + self.c_w * Complex64::new(y, 0.0).powc(Complex64::new(1.0, 0.0) - self.w);
        }
        v
    }
}

/// E(z, 1/2+s), reduced automatically. `tol` is respected by the built-in
/// truncation rule (the K-Bessel tail sits far below any practical tol).
pub fn eval_e(z: UpperHalfPoint, s: Complex64, _tol: f64) -> Result<Complex64> {
    Ok(EisBasis::new(s)?.eval(z))
}

/// A Cauchy-circle differentiator sharing its per-node bases across
/// evaluation points: f^{(n)}(s0) = n!/(N rⁿ) Σ_j f(s0+re^{iθ_j})e^{−inθ_j}.
pub struct CauchyDeriv {
    pub nodes: Vec<(Complex64, Complex64)>, // (s_j, weight_j) with Σ w_j f(s_j) = f^{(n)}(s0)
}

impl CauchyDeriv {
    pub fn new(s0: Complex64, n: u32, radius: f64, n_nodes: usize) -> Self {
        let fact: f64 = (1..=n).map(|j| j as f64).product();
        let nodes = (0..n_nodes)
            .map(|j| {
                let th = TAU * j as f64 / n_nodes as f64;
                let rot = Complex64::from_polar(1.0, th);
                let s = s0 + radius * rot;
                let w = Complex64::from_polar(1.0, -(n as f64) * th) * fact
                    / (n_nodes as f64 * radius.powi(n as i32));
                (s, w)
            })
            .collect();
        Self { nodes }
    }
}

const DERIV_NODES: usize = 64;

fn deriv_radius(s0: Complex64) -> f64 {
    let d_half = (s0 - Complex64::new(0.5, 0.0)).norm();
    let d_mhalf = (s0 + Complex64::new(0.5, 0.0)).norm();
    (0.1f64).min(0.5 * d_half).min(0.5 * d_mhalf).max(1e-3)
}

/// n-th s-derivative of E(z, 1/2+s) at s0 by a Cauchy circle.
pub fn eval_e_deriv(z: UpperHalfPoint, s0: Complex64, n: u32, tol: f64) -> Result<Complex64> {
    if n == 0 {
        return eval_e(z, s0, tol);
    }
    let ev = EisDerivEvaluator::new(s0, n, false)?;
    Ok(ev.eval(z))
}

/// n-th s-derivative of E^reg(s) = E(s) − λ̃(s) at s (holomorphic at 1/2).
pub fn eval_e_reg(z: UpperHalfPoint, s: Complex64, n: u32, _tol: f64) -> Result<Complex64> {
    let ev = EisDerivEvaluator::new(s, n, true)?;
    Ok(ev.eval(z))
}

/// Shared evaluator for E^{(n)}(s0) or E^{reg,(n)}(s0): holds one basis
/// per Cauchy node (plus the direct basis for n = 0 off the pole).
pub struct EisDerivEvaluator {
    regularized: bool,
    direct: Option<(EisBasis, Complex64)>, // basis and the λ̃ shift to subtract
    circle: Vec<(EisBasis, Complex64, Complex64)>, // (basis, weight, λ̃(s_j))
}

impl EisDerivEvaluator {
    pub fn new(s0: Complex64, n: u32, regularized: bool) -> Result<Self> {
        let at_singular = (s0 - Complex64::new(0.5, 0.0)).norm() < POLE_EPS;
        if at_singular && !regularized {
            return Err(EisError::Pole(s0));
        }
        if n == 0 && !at_singular {
            let basis = EisBasis::new(s0)?;
            let shift = if regularized { lambda_tilde(s0)? } else { Complex64::new(0.0, 0.0) };
            return Ok(Self { regularized, direct: Some((basis, shift)), circle: Vec::new() });
        }
        // E^reg is holomorphic at 1/2, so a circle centered there may
        // enclose it — but off-center circles must still keep their nodes
        // away from 1/2, where the two constituents E and λ̃ are each
        // singular before cancellation.
        let radius = if regularized {
            let d_mhalf = (s0 + Complex64::new(0.5, 0.0)).norm();
            let mut r = (0.1f64).min(0.5 * d_mhalf);
            if !at_singular {
                let d_half = (s0 - Complex64::new(0.5, 0.0)).norm();
                r = r.min(0.5 * d_half);
            }
            r
        } else {
            deriv_radius(s0)
        };
        let cd = CauchyDeriv::new(s0, n, radius, DERIV_NODES);
        let mut circle = Vec::with_capacity(cd.nodes.len());
        for (s_j, w_j) in cd.nodes {
            let basis = EisBasis::new(s_j)?;
            let shift = if regularized { lambda_tilde(s_j)? } else { Complex64::new(0.0, 0.0) };
            circle.push((basis, w_j, shift));
        }
        Ok(Self { regularized, direct: None, circle })
    }

    pub fn eval(&self, z: UpperHalfPoint) -> Complex64 {
        let (zr, _) = reduce_to_fundamental_domain(z);
        self.eval_reduced(zr)
    }

    pub fn eval_reduced(&self, zr: UpperHalfPoint) -> Complex64 {
        if let Some((basis, shift)) = &self.direct {
            return basis.eval_reduced(zr) - shift;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (basis, w, shift) in &self.circle {
            let mut v = basis.eval_reduced(zr);
            if self.regularized {
                v -= shift;
            }
            acc += w * v;
        }
        acc
    }
}

/// An evaluable Γ-invariant function together with its declared cusp
/// exponent set and a decay certificate for φ − φ*_N.
#[derive(Clone)]
pub struct AutomorphicSample {
    pub evaluator: Arc<dyn Fn(UpperHalfPoint) -> Complex64 + Send + Sync>,
    pub exponents: ExponentSet,
    pub decay_cert: f64,
    pub label: String,
}

impl AutomorphicSample {
    pub fn eval(&self, z: UpperHalfPoint) -> Complex64 {
        (self.evaluator)(z)
    }
}

/// The constant function.
pub fn sample_const(v: Complex64) -> AutomorphicSample {
    AutomorphicSample {
        evaluator: Arc::new(move |_| v),
        exponents: ExponentSet::of(vec![ExponentTerm {
            c: v,
            alpha: Complex64::new(-0.5, 0.0),
            n: 0,
        }]),
        decay_cert: 50.0,
        label: format!("const({v})"),
    }
}

/// E^{(n)}(s0) as a sample.
pub fn sample_eis(s0: Complex64, n: u32) -> Result<AutomorphicSample> {
    let ev = EisDerivEvaluator::new(s0, n, false)?;
    let exponents = exponent_set_of(&[EisensteinSpec { s0, deriv_order: n, regularized: false }])?;
    Ok(AutomorphicSample {
        evaluator: Arc::new(move |z| ev.eval(z)),
        exponents,
        decay_cert: 50.0,
        label: format!("E^({n})({s0})"),
    })
}

/// E^{reg,(n)}(s0) as a sample (s0 in the disc of radius 1/4 around 1/2).
pub fn sample_eis_reg(s0: Complex64, n: u32) -> Result<AutomorphicSample> {
    let ev = EisDerivEvaluator::new(s0, n, true)?;
    let exponents = exponent_set_of(&[EisensteinSpec { s0, deriv_order: n, regularized: true }])?;
    Ok(AutomorphicSample {
        evaluator: Arc::new(move |z| ev.eval(z)),
        exponents,
        decay_cert: 50.0,
        label: format!("Ereg^({n})({s0})"),
    })
}

/// Pointwise product of two samples.
pub fn sample_product(a: &AutomorphicSample, b: &AutomorphicSample) -> AutomorphicSample {
    let ea = a.evaluator.clone();
    let eb = b.evaluator.clone();
    AutomorphicSample {
        evaluator: Arc::new(move |z| ea(z) * eb(z)),
        exponents: a.exponents.product(&b.exponents),
        decay_cert: a.decay_cert.min(b.decay_cert),
        label: format!("{}*{}", a.label, b.label),
    }
}

/// Linear combination a·φ + b·ψ.
pub fn sample_lincomb(
    a: Complex64,
    phi: &AutomorphicSample,
    b: Complex64,
    psi: &AutomorphicSample,
) -> AutomorphicSample {
    let ea = phi.evaluator.clone();
    let eb = psi.evaluator.clone();
    AutomorphicSample {
        evaluator: Arc::new(move |z| a * ea(z) + b * eb(z)),
        exponents: phi.exponents.scale(a).union(&psi.exponents.scale(b)),
        decay_cert: phi.decay_cert.min(psi.decay_cert),
        label: format!("({a})*{} + ({b})*{}", phi.label, psi.label),
    }
}

/// The normalized Hecke operator: (T(p)φ)(z) = [φ(pz) + Σ_b φ((z+b)/p)]/(p+1).
pub fn hecke_t(p: u64, phi: &AutomorphicSample) -> AutomorphicSample {
    let ev = phi.evaluator.clone();
    let pf = p as f64;
    let evaluator = move |z: UpperHalfPoint| {
        let mut acc = ev(UpperHalfPoint { x: pf * z.x, y: pf * z.y });
        for b in 0..p {
            acc += ev(UpperHalfPoint { x: (z.x + b as f64) / pf, y: z.y / pf });
        }
        acc / (pf + 1.0)
    };
    // cusp profile transform: t^{1/2+α} logⁿ t picks up p^{±(1/2+α)} and
    // binomially shifted log powers log^j p
    let mut terms = Vec::new();
    let lp = pf.ln();
    for t in &phi.exponents.terms {
        let up = Complex64::new(pf, 0.0).powc(Complex64::new(0.5, 0.0) + t.alpha);
        let dn = Complex64::new(pf, 0.0).powc(Complex64::new(0.5, 0.0) - t.alpha);
        for j in 0..=t.n {
            let binom = binomial(t.n, j);
            let l_j = lp.powi(j as i32);
            terms.push(ExponentTerm {
                c: t.c * up * binom * l_j / (pf + 1.0),
                alpha: t.alpha,
                n: t.n - j,
            });
            terms.push(ExponentTerm {
                c: t.c * dn * binom * (-1.0f64).powi(j as i32) * l_j / (pf + 1.0),
                alpha: t.alpha,
                n: t.n - j,
            });
        }
    }
    AutomorphicSample {
        evaluator: Arc::new(evaluator),
        exponents: ExponentSet::of(terms),
        decay_cert: phi.decay_cert,
        label: format!("T({p}){}", phi.label),
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        v = v * (n - j) as f64 / (j + 1) as f64;
    }
    v
}

/// Hecke eigenvalue λ_p(s) = (p^{1/2+s} + p^{−(1/2+s)})/(p^{1/2} + p^{−1/2})
/// of T(p) on E(1/2+s).
pub fn hecke_eigenvalue(p: u64, s: Complex64) -> Complex64 {
    let q = p as f64;
    let e = Complex64::new(0.5, 0.0) + s;
    (Complex64::new(q, 0.0).powc(e) + Complex64::new(q, 0.0).powc(-e))
        / (q.sqrt() + 1.0 / q.sqrt())
}

/// Numeric constant term ∫₀¹ φ(x+it) dx by the (spectrally accurate,
/// since φ is 1-periodic) trapezoid rule.
pub fn constant_term(phi: &AutomorphicSample, t: f64, quad_nodes: usize) -> Complex64 {
    let n = quad_nodes.max(8);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += phi.eval(UpperHalfPoint { x: j as f64 / n as f64, y: t });
    }
    acc / n as f64
}

fn lambda_tilde_series_at(s0: Complex64) -> Result<TruncatedLaurent> {
    let d_half = (s0 - Complex64::new(0.5, 0.0)).norm();
    let d_mhalf = (s0 + Complex64::new(0.5, 0.0)).norm();
    let radius = (0.1f64).min(0.5 * d_half).min(0.5 * d_mhalf).max(5e-3);
    laurent::laurent_of(&|s| lambda_tilde(s).unwrap(), s0, 0, 9, radius)
        .map_err(|e| EisError::Convergence(format!("λ̃ expansion at {s0}: {e}")))
}

/// Laurent data of λ_F at 0 (orders −1 … 7), cached.
pub fn lambda_f_series() -> &'static TruncatedLaurent {
    static CACHE: OnceLock<TruncatedLaurent> = OnceLock::new();
    CACHE.get_or_init(|| {
        laurent::laurent_of(
            &|s| crate::special_fn::lambda_f(s).unwrap(),
            Complex64::new(0.0, 0.0),
            -2,
            10,
            0.1,
        )
        .expect("λ_F is meromorphic with a single simple pole inside the contour")
    })
}

/// Symbolic exponent set of a product of Eisenstein specs, with
/// coefficients assembled from λ̃ expansion data.
pub fn exponent_set_of(specs: &[EisensteinSpec]) -> Result<ExponentSet> {
    let mut acc: Option<ExponentSet> = None;
    for spec in specs {
        let set = single_exponent_set(spec)?;
        acc = Some(match acc {
            None => set,
            Some(prev) => prev.product(&set),
        });
    }
    Ok(acc.unwrap_or_else(ExponentSet::empty))
}

fn single_exponent_set(spec: &EisensteinSpec) -> Result<ExponentSet> {
    let s0 = spec.s0;
    let n = spec.deriv_order;
    let at_singular = (s0 - Complex64::new(0.5, 0.0)).norm() < POLE_EPS;
    if !spec.regularized {
        if at_singular {
            return Err(EisError::Pole(s0));
        }
        let lt = lambda_tilde_series_at(s0)?;
        let mut terms = vec![ExponentTerm { c: Complex64::new(1.0, 0.0), alpha: s0, n }];
        // dⁿ/dsⁿ [λ̃(s) t^{1/2−s}] = Σ_k C(n,k) λ̃^{(k)}(s) (−1)^{n−k} t^{1/2−s} log^{n−k} t
        for k in 0..=n {
            let coeff = binomial(n, k)
                * lt.derivative(k).map_err(|e| EisError::Convergence(e.to_string()))?
                * (-1.0f64).powi((n - k) as i32);
            terms.push(ExponentTerm { c: coeff, alpha: -s0, n: n - k });
        }
        return Ok(ExponentSet::of(terms));
    }
    // regularized: subtract λ̃(s)·1 before differentiating
    if !at_singular {
        let lt = lambda_tilde_series_at(s0)?;
        let mut set = single_exponent_set(&EisensteinSpec { regularized: false, ..*spec })?;
        let shift = lt.derivative(n).map_err(|e| EisError::Convergence(e.to_string()))?;
        set = set.union(&ExponentSet::of(vec![ExponentTerm {
            c: -shift,
            alpha: Complex64::new(-0.5, 0.0),
            n: 0,
        }]));
        return Ok(set);
    }
    // at the singular point s0 = 1/2, with u = s − 1/2:
    // constant term is t^{1+u} + λ_F(u)(t^{−u} − 1); the n-th u-derivative
    // at 0 of the second part is n! Σ_{m=1}^{n+1} a_{n−m} (−1)^m log^m t / m!
    // where a_j are the Laurent coefficients of λ_F at 0.
    let lam = lambda_f_series();
    let n_fact: f64 = (1..=n).map(|j| j as f64).product();
    let mut terms = vec![ExponentTerm { c: Complex64::new(1.0, 0.0), alpha: Complex64::new(0.5, 0.0), n }];
    let mut m_fact = 1.0;
    for m in 1..=(n + 1) {
        m_fact *= m as f64;
        let a = lam.coeff(n as i32 - m as i32);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(ExponentTerm {
            c: n_fact * a * sign / m_fact,
            alpha: Complex64::new(-0.5, 0.0),
            n: m,
        });
    }
    Ok(ExponentSet::of(terms))
}
