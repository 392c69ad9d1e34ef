//! Exact p-adic Schwartz-function calculus: ball decompositions with
//! exact cyclotomic coefficients, the support / additive / multiplicative
//! invariance indices D, δ, m and their relations under Fourier
//! transform, semi-norms, the unramified Whittaker value with its bound,
//! and the Iwahori-level intertwining scalars.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PadicError {
    #[error("the zero function has no indices")]
    ZeroFunction,
    #[error("pole of a closed form at the requested point")]
    Pole,
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("canonical refinement would need {0} cells; instance too fine")]
    TooManyCells(u64),
    #[error("malformed textual representation: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PadicError>;

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact rational with i128 arithmetic (numerator/denominator, reduced,
/// denominator positive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Rat {
    pub num: i128,
    pub den: i128,
}

impl Rat {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rat { num: sign * num / g, den: sign * den / g }
    }
    pub fn int(n: i128) -> Self {
        Rat { num: n, den: 1 }
    }
    pub fn zero() -> Self {
        Rat::int(0)
    }
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
    pub fn add(&self, o: &Rat) -> Rat {
        Rat::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }
    pub fn sub(&self, o: &Rat) -> Rat {
        Rat::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }
    pub fn mul(&self, o: &Rat) -> Rat {
        Rat::new(self.num * o.num, self.den * o.den)
    }
    pub fn neg(&self) -> Rat {
        Rat { num: -self.num, den: self.den }
    }
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
    /// p-adic valuation; None for zero.
    pub fn vp(&self, p: i64) -> Option<i32> {
        if self.num == 0 {
            return None;
        }
        let p = p as i128;
        let mut v = 0i32;
        let mut n = self.num.abs();
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        let mut d = self.den;
        while d % p == 0 {
            d /= p;
            v -= 1;
        }
        Some(v)
    }
    /// Reduce p-adically mod p^l into the canonical representative with
    /// denominator a p-power and numerator in [0, p^{l+e}). Requires the
    /// denominator to be a p-power times a unit that is invertible mod
    /// the needed modulus.
    pub fn red_mod(&self, p: i64, l: i32) -> Rat {
        let p = p as i128;
        // split denominator den = p^e * u
        let mut e = 0i32;
        let mut u = self.den;
        while u % p == 0 {
            u /= p;
            e += 1;
        }
        let modexp = l + e;
        if modexp <= 0 {
            return Rat::zero();
        }
        let m = p.pow(modexp as u32);
        // numerator divided by the unit part mod m
        let inv = mod_inverse(u.rem_euclid(m), m);
        let n = (self.num.rem_euclid(m) * inv).rem_euclid(m);
        Rat::new(n, p.pow(e as u32))
    }
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    // extended Euclid; panics if not invertible (callers guarantee units)
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    assert!(old_r == 1, "non-invertible element mod {m}");
    old_s.rem_euclid(m)
}

/// Exact element of the group algebra ℚ[ℚ/ℤ] with p-power-denominator
/// phases: Σ r_j · e^{2πi φ_j}. Canonically reduced in the cyclotomic
/// field ℚ(ζ_{p^M}) so zero-testing and equality are exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloRat {
    /// map phase (num, den with den = p^m) → rational coefficient
    pub entries: BTreeMap<(i128, i128), Rat>,
}

impl CycloRat {
    pub fn zero() -> Self {
        CycloRat { entries: BTreeMap::new() }
    }
    pub fn rational(r: Rat) -> Self {
        let mut e = BTreeMap::new();
        if !r.is_zero() {
            e.insert((0, 1), r);
        }
        CycloRat { entries: e }
    }
    pub fn one() -> Self {
        Self::rational(Rat::int(1))
    }
    pub fn phase(phi: Rat) -> Self {
        let mut e = BTreeMap::new();
        e.insert((phi.num, phi.den), Rat::int(1));
        CycloRat { entries: e }
    }
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn push(map: &mut BTreeMap<(i128, i128), Rat>, phi: (i128, i128), r: Rat) {
        if r.is_zero() {
            return;
        }
        let cur = map.get(&phi).copied().unwrap_or_else(Rat::zero);
        let s = cur.add(&r);
        if s.is_zero() {
            map.remove(&phi);
        } else {
            map.insert(phi, s);
        }
    }

    /// Canonical reduction in ℚ(ζ_{p^M}): write every phase over the
    /// common denominator p^M and rewrite exponents ≥ (p−1)p^{M−1} via
    /// the cyclotomic relation Σ_{i=0}^{p−1} ζ_{p^M}^{t + i p^{M−1}} = 0.
    pub fn reduce(&self, p: i64) -> CycloRat {
        if self.entries.is_empty() {
            return CycloRat::zero();
        }
        let p128 = p as i128;
        let mut big_m = 0u32;
        for (_, den) in self.entries.keys() {
            let mut d = *den;
            let mut m = 0u32;
            while d % p128 == 0 {
                d /= p128;
                m += 1;
            }
            assert!(d == 1, "phase denominator is not a p-power");
            big_m = big_m.max(m);
        }
        if big_m == 0 {
            let total = self
                .entries
                .values()
                .fold(Rat::zero(), |acc, r| acc.add(r));
            return CycloRat::rational(total);
        }
        let pm = p128.pow(big_m);
        let pm1 = p128.pow(big_m - 1);
        let mut vec: BTreeMap<i128, Rat> = BTreeMap::new();
        for ((num, den), r) in &self.entries {
            let j = (num * (pm / den)).rem_euclid(pm);
            Self::push_exp(&mut vec, j, *r);
        }
        let cut = (p128 - 1) * pm1;
        let high: Vec<(i128, Rat)> =
            vec.iter().filter(|(j, _)| **j >= cut).map(|(j, r)| (*j, *r)).collect();
        for (j, r) in high {
            vec.remove(&j);
            let t = j - cut;
            for i in 0..(p128 - 1) {
                Self::push_exp(&mut vec, t + i * pm1, r.neg());
            }
        }
        let mut out = BTreeMap::new();
        for (j, r) in vec {
            let g = gcd(j, pm).max(1);
            Self::push(&mut out, (j / g, pm / g), r);
        }
        CycloRat { entries: out }
    }

    fn push_exp(map: &mut BTreeMap<i128, Rat>, j: i128, r: Rat) {
        if r.is_zero() {
            return;
        }
        let cur = map.get(&j).copied().unwrap_or_else(Rat::zero);
        let s = cur.add(&r);
        if s.is_zero() {
            map.remove(&j);
        } else {
            map.insert(j, s);
        }
    }

    pub fn add(&self, o: &CycloRat, p: i64) -> CycloRat {
        let mut map = self.entries.clone();
        for (phi, r) in &o.entries {
            Self::push(&mut map, *phi, *r);
        }
        CycloRat { entries: map }.reduce(p)
    }
    pub fn scale_rat(&self, r: Rat) -> CycloRat {
        if r.is_zero() {
            return CycloRat::zero();
        }
        CycloRat {
            entries: self.entries.iter().map(|(k, v)| (*k, v.mul(&r))).collect(),
        }
    }
    pub fn mul_phase(&self, phi: Rat, p: i64) -> CycloRat {
        let mut map = BTreeMap::new();
        for ((num, den), r) in &self.entries {
            let s = Rat::new(*num, *den).add(&phi);
            let s = s.sub(&Rat::int(s.num.div_euclid(s.den))); // mod 1
            Self::push(&mut map, (s.num, s.den), *r);
        }
        CycloRat { entries: map }.reduce(p)
    }
    pub fn neg(&self) -> CycloRat {
        self.scale_rat(Rat::int(-1))
    }
    pub fn render(&self) -> Complex64 {
        self.entries
            .iter()
            .map(|((num, den), r)| {
                let ang = 2.0 * std::f64::consts::PI * (*num as f64) / (*den as f64);
                Complex64::new(ang.cos(), ang.sin()) * r.to_f64()
            })
            .sum()
    }
    pub fn abs(&self) -> f64 {
        self.render().norm()
    }
}

/// One ball term coeff · 1_{center + p^level ℤ_p^d}.
#[derive(Debug, Clone, Serialize)]
pub struct BallTerm {
    pub center: Vec<Rat>,
    pub level: i32,
    pub coeff: CycloRat,
}

/// Exact Schwartz–Bruhat function on ℚ_p^d in canonical form: pairwise
/// disjoint balls, zero terms pruned, centers reduced mod p^level, and
/// no full sibling family with equal coefficients (those merge upward).
#[derive(Debug, Clone, Serialize)]
pub struct PadicSchwartz {
    pub p: i64,
    pub d: usize,
    pub terms: Vec<BallTerm>,
}

const CELL_CAP: u64 = 1 << 21;

impl PadicSchwartz {
    pub fn new(p: i64, d: usize, terms: Vec<BallTerm>) -> Result<Self> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        assert!(d == 1 || d == 2, "dimension must be 1 or 2");
        let s = PadicSchwartz { p, d, terms };
        s.canonicalize()
    }

    /// Indicator of a single ball.
    pub fn ball(p: i64, d: usize, center: Vec<Rat>, level: i32) -> Result<Self> {
        Self::new(
            p,
            d,
            vec![BallTerm { center, level, coeff: CycloRat::one() }],
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common refinement level of the current term list.
    fn common_level(&self) -> i32 {
        self.terms.iter().map(|t| t.level).max().unwrap_or(0)
    }

    /// Refine all terms to cells of one common level and accumulate
    /// coefficients exactly; then merge full equal sibling families back
    /// up as far as possible.
    fn canonicalize(&self) -> Result<Self> {
        if self.terms.is_empty() {
            return Ok(self.clone());
        }
        let lvl = self.common_level();
        let p = self.p;
        let mut total: u64 = 0;
        for t in &self.terms {
            let span = (lvl - t.level) as u32 * self.d as u32;
            total = total.saturating_add((p as u64).saturating_pow(span));
            if total > CELL_CAP {
                return Err(PadicError::TooManyCells(total));
            }
        }
        let mut cells: BTreeMap<Vec<Rat>, CycloRat> = BTreeMap::new();
        for t in &self.terms {
            let span = lvl - t.level;
            let reps = enumerate_shifts(p, span, self.d);
            for shift in reps {
                let center: Vec<Rat> = t
                    .center
                    .iter()
                    .zip(shift.iter())
                    .map(|(c, s)| {
                        // shift lives at scale p^{t.level}
                        let scaled =
                            s.mul(&pow_rat(p, t.level));
                        c.add(&scaled).red_mod(p, lvl)
                    })
                    .collect();
                let e = cells.entry(center).or_insert_with(CycloRat::zero);
                *e = e.add(&t.coeff, p);
            }
        }
        cells.retain(|_, c| !c.is_zero());
        // merge full equal sibling families upward, tracking the level of
        // each working generation explicitly
        let mut terms: Vec<BallTerm> = Vec::new();
        let mut current: BTreeMap<Vec<Rat>, CycloRat> = cells;
        let mut level = lvl;
        let family = (self.p as u64).pow(self.d as u32);
        while !current.is_empty() && level > lvl - 64 {
            let mut parents: BTreeMap<Vec<Rat>, Vec<(Vec<Rat>, CycloRat)>> = BTreeMap::new();
            for (c, v) in &current {
                let parent: Vec<Rat> =
                    c.iter().map(|x| x.red_mod(self.p, level - 1)).collect();
                parents.entry(parent).or_default().push((c.clone(), v.clone()));
            }
            let mut next: BTreeMap<Vec<Rat>, CycloRat> = BTreeMap::new();
            for (parent, kids) in parents {
                if kids.len() as u64 == family
                    && kids.iter().all(|(_, v)| *v == kids[0].1)
                {
                    next.insert(parent, kids[0].1.clone());
                } else {
                    for (c, v) in kids {
                        terms.push(BallTerm { center: c, level, coeff: v });
                    }
                }
            }
            current = next;
            level -= 1;
        }
        for (c, v) in current {
            terms.push(BallTerm { center: c, level, coeff: v });
        }
        terms.sort_by(|a, b| (a.level, &a.center).cmp(&(b.level, &b.center)));
        Ok(PadicSchwartz { p: self.p, d: self.d, terms })
    }

    /// Pointwise evaluation (x given exactly).
    pub fn eval(&self, x: &[Rat]) -> CycloRat {
        let mut acc = CycloRat::zero();
        for t in &self.terms {
            let inside = t.center.iter().zip(x.iter()).all(|(c, xi)| {
                xi.sub(c)
                    .vp(self.p)
                    .map(|v| v >= t.level)
                    .unwrap_or(true)
            });
            if inside {
                acc = acc.add(&t.coeff, self.p);
            }
        }
        acc
    }

    pub fn scale(&self, r: Rat) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| BallTerm { coeff: t.coeff.scale_rat(r), ..t.clone() })
            .collect();
        PadicSchwartz { p: self.p, d: self.d, terms }
            .canonicalize()
            .expect("scaling preserves canonicity bounds")
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        assert!(self.p == o.p && self.d == o.d);
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        PadicSchwartz { p: self.p, d: self.d, terms }.canonicalize()
    }

    /// Φ(−x).
    pub fn reflect(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| BallTerm {
                center: t
                    .center
                    .iter()
                    .map(|c| c.neg().red_mod(self.p, t.level))
                    .collect(),
                level: t.level,
                coeff: t.coeff.clone(),
            })
            .collect();
        PadicSchwartz { p: self.p, d: self.d, terms }
            .canonicalize()
            .expect("reflection preserves cell counts")
    }

    /// Right translation R(κ): Φ(x) ↦ Φ(x·κ) for κ ∈ GL_d(ℤ_p) given as
    /// an exact rational matrix with unit determinant valuation.
    pub fn translate(&self, kappa: &[Vec<Rat>]) -> Result<Self> {
        assert!(kappa.len() == self.d);
        let kinv = invert_matrix(kappa, self.d);
        let terms = self
            .terms
            .iter()
            .map(|t| BallTerm {
                center: mat_vec(&kinv, &t.center, self.d)
                    .iter()
                    .map(|c| c.red_mod(self.p, t.level))
                    .collect(),
                level: t.level,
                coeff: t.coeff.clone(),
            })
            .collect();
        PadicSchwartz { p: self.p, d: self.d, terms }.canonicalize()
    }

    /// Exact equality as functions (canonical forms compared after a
    /// common refinement through the canonicalizer).
    pub fn equals(&self, o: &Self) -> bool {
        match self.add(&o.scale(Rat::int(-1))) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// Textual format: one line per term,
    /// `p d coeff_re coeff_im center... level`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let c = t.coeff.render();
            let centers: Vec<String> = t
                .center
                .iter()
                .map(|r| {
                    if r.den == 1 {
                        format!("{}", r.num)
                    } else {
                        format!("{}/{}", r.num, r.den)
                    }
                })
                .collect();
            out.push_str(&format!(
                "{} {} {} {} {} {}\n",
                self.p,
                self.d,
                c.re,
                c.im,
                centers.join(" "),
                t.level
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut p = 0i64;
        let mut d = 0usize;
        let mut terms = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() < 6 {
                return Err(PadicError::Parse(format!("short line: {line}")));
            }
            let lp: i64 = f[0].parse().map_err(|_| PadicError::Parse(line.into()))?;
            let ld: usize = f[1].parse().map_err(|_| PadicError::Parse(line.into()))?;
            if p == 0 {
                p = lp;
                d = ld;
            } else if p != lp || d != ld {
                return Err(PadicError::Parse("inconsistent p or d".into()));
            }
            if f.len() != 5 + d {
                return Err(PadicError::Parse(format!("field count: {line}")));
            }
            let re: f64 = f[2].parse().map_err(|_| PadicError::Parse(line.into()))?;
            let im: f64 = f[3].parse().map_err(|_| PadicError::Parse(line.into()))?;
            let mut center = Vec::new();
            for c in &f[4..4 + d] {
                let r = if let Some((n, dd)) = c.split_once('/') {
                    Rat::new(
                        n.parse().map_err(|_| PadicError::Parse(line.into()))?,
                        dd.parse().map_err(|_| PadicError::Parse(line.into()))?,
                    )
                } else {
                    Rat::int(c.parse().map_err(|_| PadicError::Parse(line.into()))?)
                };
                center.push(r);
            }
            let level: i32 = f[4 + d].parse().map_err(|_| PadicError::Parse(line.into()))?;
            // rational reconstruction of the rendered coefficient when it
            // is (close to) rational; otherwise keep a dyadic approximation
            let coeff = CycloRat::rational(approx_rat(re));
            let coeff = if im.abs() > 1e-12 {
                return Err(PadicError::Parse(
                    "non-real coefficients are not round-trippable in text form".into(),
                ));
            } else {
                coeff
            };
            terms.push(BallTerm { center, level, coeff });
        }
        if p == 0 {
            return Err(PadicError::Parse("empty input".into()));
        }
        PadicSchwartz::new(p, d, terms)
    }
}

fn approx_rat(x: f64) -> Rat {
    // continued-fraction reconstruction with small denominators
    let mut best = Rat::int(x.round() as i128);
    let mut err = (x - best.to_f64()).abs();
    for den in 1..=1024i128 {
        let num = (x * den as f64).round() as i128;
        let e = (x - num as f64 / den as f64).abs();
        if e < err - 1e-15 {
            best = Rat::new(num, den);
            err = e;
        }
        if err < 1e-12 {
            break;
        }
    }
    best
}

fn pow_rat(p: i64, e: i32) -> Rat {
    let p = p as i128;
    if e >= 0 {
        Rat::int(p.pow(e as u32))
    } else {
        Rat::new(1, p.pow((-e) as u32))
    }
}

/// All shift vectors (j_1, …, j_d) with 0 ≤ j_i < p^span, scaled later.
fn enumerate_shifts(p: i64, span: i32, d: usize) -> Vec<Vec<Rat>> {
    if span <= 0 {
        return vec![vec![Rat::zero(); d]];
    }
    let n = (p as i128).pow(span as u32);
    let mut out = Vec::new();
    let total = n.pow(d as u32);
    for idx in 0..total {
        let mut v = Vec::with_capacity(d);
        let mut rest = idx;
        for _ in 0..d {
            v.push(Rat::int(rest % n));
            rest /= n;
        }
        out.push(v);
    }
    out
}

fn invert_matrix(m: &[Vec<Rat>], d: usize) -> Vec<Vec<Rat>> {
    match d {
        1 => vec![vec![Rat::new(m[0][0].den, m[0][0].num)]],
        2 => {
            let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
            assert!(!det.is_zero(), "singular matrix");
            let inv_det = Rat::new(det.den, det.num);
            vec![
                vec![m[1][1].mul(&inv_det), m[0][1].neg().mul(&inv_det)],
                vec![m[1][0].neg().mul(&inv_det), m[0][0].mul(&inv_det)],
            ]
        }
        _ => unreachable!(),
    }
}

fn mat_vec(m: &[Vec<Rat>], x: &[Rat], d: usize) -> Vec<Rat> {
    // row vector times matrix: (x·m)_j = Σ_i x_i m_{ij}
    (0..d)
        .map(|j| {
            (0..d)
                .map(|i| x[i].mul(&m[i][j]))
                .fold(Rat::zero(), |a, b| a.add(&b))
        })
        .collect()
}

// ---------------------------------------------------------------- indices

/// (D, δ, m): support index, additive invariance index, multiplicative
/// invariance index. m is decided by enumerating elementary congruence
/// generators in the finite quotient at the canonical level.
pub fn indices(phi: &PadicSchwartz) -> Result<(i32, i32, i32)> {
    if phi.is_zero() {
        return Err(PadicError::ZeroFunction);
    }
    let big_d = phi
        .terms
        .iter()
        .flat_map(|t| {
            t.center
                .iter()
                .map(move |c| c.vp(phi.p).map(|v| v.min(t.level)).unwrap_or(t.level))
        })
        .min()
        .unwrap();
    let delta = phi.terms.iter().map(|t| t.level).max().unwrap();
    // m: smallest m ≥ 0 with invariance under κ ≡ 1 mod p^m, bounded by
    // δ − D; invariance under the full congruence subgroup is equivalent
    // to invariance under elementary generators 1 + p^m·u·E_{ij} modulo
    // the level where the action becomes trivial
    let bound = (delta - big_d).max(0);
    'outer: for m in 0..=bound {
        let r = bound - m;
        for i in 0..phi.d {
            for j in 0..phi.d {
                let umax = (phi.p as i128).pow(r as u32);
                for u in 1..umax {
                    let mut kappa: Vec<Vec<Rat>> = (0..phi.d)
                        .map(|a| {
                            (0..phi.d)
                                .map(|b| Rat::int(if a == b { 1 } else { 0 }))
                                .collect()
                        })
                        .collect();
                    let bump = Rat::int(u).mul(&pow_rat(phi.p, m));
                    kappa[i][j] = kappa[i][j].add(&bump);
                    if i == j && kappa[i][j].vp(phi.p) != Some(0) {
                        continue; // not a unit diagonal; skip
                    }
                    let moved = phi.translate(&kappa)?;
                    if !moved.equals(phi) {
                        continue 'outer;
                    }
                }
            }
        }
        return Ok((big_d, delta, m));
    }
    Ok((big_d, delta, bound))
}

// ---------------------------------------------------------------- fourier

/// Full Fourier transform with additive character of conductor exponent
/// `c`: F(Φ)(x) = ∫ Φ(y) ψ(−y·x) dy, computed exactly per ball.
pub fn fourier(phi: &PadicSchwartz, psi_conductor: i32) -> Result<PadicSchwartz> {
    fourier_partial(phi, psi_conductor, &(0..phi.d).collect::<Vec<_>>())
}

/// Partial Fourier transform in the listed coordinates.
pub fn fourier_partial(
    phi: &PadicSchwartz,
    psi_conductor: i32,
    coords: &[usize],
) -> Result<PadicSchwartz> {
    let p = phi.p;
    let c = psi_conductor;
    let mut out_terms: Vec<BallTerm> = Vec::new();
    for t in &phi.terms {
        // per-coordinate factor lists: (center, level, phase) with a
        // common rational magnitude accumulated separately
        let mut factor_lists: Vec<Vec<(Rat, i32, Rat)>> = Vec::new();
        let mut mag = Rat::int(1);
        for (ci, center) in t.center.iter().enumerate() {
            if !coords.contains(&ci) {
                factor_lists.push(vec![(*center, t.level, Rat::zero())]);
                continue;
            }
            mag = mag.mul(&pow_rat(p, -t.level));
            let va = center.vp(p);
            match va {
                None => {
                    // zero center: single ball p^{−k−c}
                    factor_lists.push(vec![(Rat::zero(), -t.level - c, Rat::zero())]);
                }
                Some(v) if v >= t.level => {
                    factor_lists.push(vec![(Rat::zero(), -t.level - c, Rat::zero())]);
                }
                Some(v) => {
                    // split p^{−k−c} into cosets of p^{−c−v}
                    let l = -c - v;
                    let count = (p as i128).pow((l + t.level + c) as u32);
                    let step = pow_rat(p, -t.level - c);
                    let mut list = Vec::new();
                    for j in 0..count {
                        let x0 = Rat::int(j).mul(&step);
                        // phase of ψ(−a x₀) with conductor c:
                        // ψ(t) = e^{2πi frac_p(p^c t)}
                        let arg = center.neg().mul(&x0).mul(&pow_rat(p, c));
                        let phase = arg.red_mod(p, 0);
                        list.push((x0.red_mod(p, l), l, phase));
                    }
                    factor_lists.push(list);
                }
            }
        }
        // cartesian product of the per-coordinate factors, refined to
        // the common max level so terms stay isotropic
        let mut combos: Vec<(Vec<(Rat, i32)>, Rat)> = vec![(Vec::new(), Rat::zero())];
        for list in &factor_lists {
            let mut next = Vec::new();
            for (partial, ph) in &combos {
                for (ctr, lvl, phase) in list {
                    let mut np = partial.clone();
                    np.push((*ctr, *lvl));
                    let mut s = ph.add(phase);
                    s = s.sub(&Rat::int(s.num.div_euclid(s.den)));
                    next.push((np, s));
                }
            }
            combos = next;
        }
        for (coord_balls, phase) in combos {
            let lmax = coord_balls.iter().map(|(_, l)| *l).max().unwrap();
            // split each coarser coordinate into sub-cosets of level lmax
            let mut centers_per_coord: Vec<Vec<Rat>> = Vec::new();
            for (ctr, lvl) in &coord_balls {
                if *lvl == lmax {
                    centers_per_coord.push(vec![*ctr]);
                } else {
                    let n = (p as i128).pow((lmax - lvl) as u32);
                    centers_per_coord.push(
                        (0..n)
                            .map(|j| {
                                ctr.add(&Rat::int(j).mul(&pow_rat(p, *lvl)))
                                    .red_mod(p, lmax)
                            })
                            .collect(),
                    );
                }
            }
            let mut idx: Vec<Vec<Rat>> = vec![Vec::new()];
            for cp in &centers_per_coord {
                let mut next = Vec::new();
                for partial in &idx {
                    for ctr in cp {
                        let mut np = partial.clone();
                        np.push(*ctr);
                        next.push(np);
                    }
                }
                idx = next;
                if idx.len() as u64 > CELL_CAP {
                    return Err(PadicError::TooManyCells(idx.len() as u64));
                }
            }
            let coeff = t.coeff.scale_rat(mag).mul_phase(phase, p);
            for center in idx {
                out_terms.push(BallTerm { center, level: lmax, coeff: coeff.clone() });
            }
        }
    }
    PadicSchwartz { p, d: phi.d, terms: out_terms }.canonicalize()
}

// ------------------------------------------------------------------ norms

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LNorm {
    L1,
    L2,
    LInf,
}

/// S_l^σ(Φ) = ‖ |x⃗^σ| Φ ‖_l, evaluated exactly per ball (with closed
/// geometric tails for coordinates whose ball contains 0).
pub fn schwartz_norms(phi: &PadicSchwartz, l: LNorm, sigma: &[f64]) -> f64 {
    assert!(sigma.len() == phi.d);
    let p = phi.p as f64;
    let pe = |e: f64| p.powf(e);
    match l {
        LNorm::LInf => phi
            .terms
            .iter()
            .map(|t| {
                let mut v = t.coeff.abs();
                for (i, c) in t.center.iter().enumerate() {
                    let sup = match c.vp(phi.p) {
                        Some(vc) if vc < t.level => pe(-(vc as f64)),
                        // ball contains 0 in this coordinate: sup of |x|
                        // over p^level is p^{−level}
                        _ => pe(-(t.level as f64)),
                    };
                    v *= sup.powf(sigma[i]);
                }
                v
            })
            .fold(0.0, f64::max),
        LNorm::L1 | LNorm::L2 => {
            let le = if l == LNorm::L1 { 1.0 } else { 2.0 };
            let mut acc = 0.0;
            for t in &phi.terms {
                let mut cell = t.coeff.abs().powf(le);
                for (i, c) in t.center.iter().enumerate() {
                    let s = sigma[i] * le;
                    let factor = match c.vp(phi.p) {
                        Some(vc) if vc < t.level => {
                            pe(-(vc as f64) * s) * pe(-(t.level as f64))
                        }
                        _ => {
                            // ∫_{p^L} |x|^s dx = (1−1/p)·p^{−L(s+1)}/(1−p^{−(s+1)})
                            (1.0 - 1.0 / p) * pe(-(t.level as f64) * (s + 1.0))
                                / (1.0 - pe(-(s + 1.0)))
                        }
                    };
                    cell *= factor;
                }
                acc += cell;
            }
            acc.powf(1.0 / le)
        }
    }
}

pub fn norm(phi: &PadicSchwartz, l: LNorm) -> f64 {
    schwartz_norms(phi, l, &vec![0.0; phi.d])
}

// -------------------------------------------------------------- whittaker

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LocalCharData {
    pub q: i64,
    pub s: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl LocalCharData {
    /// Unramified data with trivial central character: α = q^{−s},
    /// β = q^{s} (so αβ = 1).
    pub fn unramified(q: i64, s: Complex64) -> Self {
        let lq = (q as f64).ln();
        let alpha = (-s * lq).exp();
        let beta = (s * lq).exp();
        LocalCharData { q, s, alpha, beta }
    }
}

/// W(a(ϖⁿ)) = q^{−n/2}(α^{n+1}−β^{n+1})/(α−β)·1_{n≥0}; the α = β case by
/// the limit (n+1)αⁿ q^{−n/2}.
pub fn whittaker_unramified(n: i32, data: &LocalCharData) -> Complex64 {
    if n < 0 {
        return Complex64::new(0.0, 0.0);
    }
    let qn = (data.q as f64).powf(-(n as f64) / 2.0);
    let d = data.alpha - data.beta;
    if d.norm() < 1e-12 {
        return qn * (n as f64 + 1.0) * data.alpha.powi(n);
    }
    qn * (data.alpha.powi(n + 1) - data.beta.powi(n + 1)) / d
}

/// Check |W(a(ϖⁿ))| ≤ (2/(ε log q))·(sup_{x>0} x e^{−x})·|y|^{1/2−|Re s|−ε}·1_{y∈p}
/// + 1_{y∈o^×}, with |y| = q^{−n}.
pub fn whittaker_bound_check(n: i32, data: &LocalCharData, eps: f64) -> bool {
    assert!(eps > 0.0);
    let w = whittaker_unramified(n, data).norm();
    if n < 0 {
        return w == 0.0;
    }
    let q = data.q as f64;
    let y_abs = q.powi(-n);
    let mut bound = 0.0;
    if n >= 1 {
        bound += 2.0 / (eps * q.ln()) * (1.0 / std::f64::consts::E)
            * y_abs.powf(0.5 - data.s.re.abs() - eps);
    }
    if n == 0 {
        bound += 1.0;
    }
    w <= bound * (1.0 + 1e-12)
}

// ---------------------------------------------------------------- iwahori

/// Closed forms of the Iwahori-level scalars:
/// μ₁(s) = q^{−2s}(1−q^{−(1−2s)})/(1+q^{−(1+2s)}),
/// c₁(s) = (q^{s+1/2}−q^{−(s+1/2)})/(q^{1/2}+q^{−1/2}),
/// c₀(s) = (q^s+q^{−s})/(q^{1/2}+q^{−1/2}).
pub fn iwahori_scalars(q: i64, s: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    let lq = (q as f64).ln();
    let qs = |e: Complex64| (e * lq).exp();
    let one = Complex64::new(1.0, 0.0);
    let den1 = one + qs(-(one + 2.0 * s));
    if den1.norm() < 1e-12 {
        return Err(PadicError::Pole);
    }
    let mu1 = qs(-2.0 * s) * (one - qs(-(one - 2.0 * s))) / den1;
    let denk = qs(Complex64::new(0.5, 0.0)) + qs(Complex64::new(-0.5, 0.0));
    let c1 = (qs(s + 0.5) - qs(-(s + 0.5))) / denk;
    let c0 = (qs(s) + qs(-s)) / denk;
    Ok((mu1, c0, c1))
}

/// λ_F^{(−1)}(0)·c₀'(−1/2): the defect scalar of the regularized integral
/// under the translation a(ϖ^{−1}), obtained by contour differentiation
/// of c₀ at −1/2.
pub fn translation_defect(q: i64) -> Complex64 {
    let series = crate::laurent::laurent_of(
        &|s| iwahori_scalars(q, s).unwrap().1,
        Complex64::new(-0.5, 0.0),
        0,
        4,
        0.1,
    )
    .expect("c0 is entire");
    let c0p = series.coeff(1); // first derivative / 1!
    crate::eisenstein::lambda_f_series().coeff(-1) * c0p
}

/// Matrix of the local intertwining integral on the two-dimensional
/// Iwahori-fixed space in the basis (e₀, e₁), where e₀ ≡ 1 on K and
/// e₁ = √q on the Iwahori subgroup, −1/√q off it. Computed from the
/// shell decomposition of the defining integral (exact geometric sums,
/// continued by the closed rational form in q^{−s}):
///   M f(k₀) = ∫_{v(x)≥0} f(w n(x) k₀) dx + G(s)·f(κ-class of k₀),
/// with G(s) = (1−q^{−1}) q^{−2s}/(1−q^{−2s}).
pub fn intertwine_iwahori(q: i64, s: Complex64) -> [[Complex64; 2]; 2] {
    let qf = q as f64;
    let lq = qf.ln();
    let qs = |e: Complex64| (e * lq).exp();
    let one = Complex64::new(1.0, 0.0);
    let g = (1.0 - 1.0 / qf) * qs(-2.0 * s) / (one - qs(-2.0 * s));
    let sq = qf.sqrt();
    // values of e0, e1 on the two Iwahori classes
    let e0 = [1.0, 1.0];
    let e1 = [sq, -1.0 / sq];
    // M f at the class of 1 (Iwahori) and of w (non-Iwahori)
    let mf = |f: [f64; 2]| {
        let at_1 = f[1] * one + g * f[0];
        let at_w = (f[0] / qf + (1.0 - 1.0 / qf) * f[1]) * one + g * f[1];
        // resolve into A·e0 + B·e1 from values on the two classes
        let b = (at_1 - at_w) / (sq + 1.0 / sq);
        let a = at_1 - b * sq;
        (a, b)
    };
    let (m00, m10) = mf(e0);
    let (m01, m11) = mf(e1);
    [[m00, m01], [m10, m11]]
}

/// The spherical eigenvalue of the local intertwining operator:
/// (1−q^{−(1+2s)})/(1−q^{−2s}) — the local Euler-factor ratio of λ̃.
pub fn local_lambda_tilde(q: i64, s: Complex64) -> Complex64 {
    let lq = (q as f64).ln();
    let qs = |e: Complex64| (e * lq).exp();
    let one = Complex64::new(1.0, 0.0);
    (one - qs(-(one + 2.0 * s))) / (one - qs(-2.0 * s))
}

/// Truncated shell sum of the defining intertwining integral at the
/// spherical vector (Re s > 0 needed for convergence); oracle for the
/// closed form.
pub fn spherical_shell_sum(q: i64, s: Complex64, shells: u32) -> Complex64 {
    let qf = q as f64;
    let lq = qf.ln();
    let mut acc = Complex64::new(1.0, 0.0); // v(x) ≥ 0 part
    for j in 1..=shells {
        let weight = (1.0 - 1.0 / qf) * qf.powi(j as i32);
        acc += weight * (-(j as f64) * (1.0 + 2.0 * s.re) * lq).exp()
            * Complex64::new(0.0, -(j as f64) * 2.0 * s.im * lq).exp();
    }
    acc
}

// ------------------------------------------------- exact Iwasawa (tests)

/// Iwasawa data of g ∈ GL₂(ℚ) ⊂ GL₂(ℚ_p): g = b·k with b upper
/// triangular, k ∈ GL₂(ℤ_p); returns (v_p(b11/b22), k).
pub fn iwasawa(g: &[Vec<Rat>], p: i64) -> (i32, Vec<Vec<Rat>>) {
    let (c, d) = (g[1][0], g[1][1]);
    let vc = c.vp(p).unwrap_or(i32::MAX);
    let vd = d.vp(p).unwrap_or(i32::MAX);
    assert!(vc != i32::MAX || vd != i32::MAX, "singular row");
    if vc >= vd {
        // zero the lower-left with k1 = [[1,0],[−c/d,1]]
        let t = c.mul(&Rat::new(d.den, d.num));
        let b11 = g[0][0].sub(&g[0][1].mul(&t));
        let b22 = d;
        let v = b11.vp(p).unwrap() - b22.vp(p).unwrap();
        // k = k1^{-1} = [[1,0],[t,1]]
        let k = vec![vec![Rat::int(1), Rat::zero()], vec![t, Rat::int(1)]];
        (v, k)
    } else {
        // swap columns first: g·sw, sw = [[0,1],[1,0]]
        let gs = vec![
            vec![g[0][1], g[0][0]],
            vec![g[1][1], g[1][0]],
        ];
        let (v, k1) = iwasawa(&gs, p);
        // k = sw^{-1}·k1 = sw·k1 (row swap of k1)
        let k = vec![k1[1].clone(), k1[0].clone()];
        (v, k)
    }
}

/// Value of the flat section f_{j,s} at a rational matrix g, where j
/// selects e₀ or e₁.
pub fn section_value(j: usize, s: Complex64, g: &[Vec<Rat>], q: i64) -> Complex64 {
    let (v, k) = iwasawa(g, q);
    let in_iwahori = k[1][0]
        .vp(q)
        .map(|w| w >= 1)
        .unwrap_or(true);
    let sq = (q as f64).sqrt();
    let fval = match (j, in_iwahori) {
        (0, _) => 1.0,
        (1, true) => sq,
        (1, false) => -1.0 / sq,
        _ => unreachable!(),
    };
    let lq = (q as f64).ln();
    ((Complex64::new(0.5, 0.0) + s) * (-(v as f64)) * lq).exp() * fval
}
