//! Truncated Laurent series at a chosen center: arithmetic with exact order
//! bookkeeping, residues, regular parts, and numerical coefficient
//! extraction of analytic functions by contour sampling.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::f64::consts::TAU;
use thiserror::Error;

/// Coefficients below this magnitude count as exact zeros when deciding
/// pole cancellation.
pub const ZERO_EPS: f64 = 1e-11;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("contour sampling did not converge (suspected singularity on the contour)")]
    Contour,
    #[error("operands expanded at different centers")]
    CenterMismatch,
    #[error("division by the identically zero series")]
    DivisionByZeroSeries,
    #[error("requested order outside the working range [{0}, {1}]")]
    OrderRange(i32, i32),
}

pub type Result<T> = std::result::Result<T, LaurentError>;

/// A finite window of Laurent coefficients of an analytic quantity at
/// `center`: orders `min_order … min_order + coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedLaurent {
    pub center: Complex64,
    pub min_order: i32,
    pub coeffs: Vec<Complex64>,
}

impl Serialize for TruncatedLaurent {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct C {
            re: f64,
            im: f64,
        }
        let mut st = ser.serialize_struct("TruncatedLaurent", 3)?;
        st.serialize_field("center", &C { re: self.center.re, im: self.center.im })?;
        st.serialize_field("min_order", &self.min_order)?;
        let cs: Vec<C> = self.coeffs.iter().map(|c| C { re: c.re, im: c.im }).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

impl TruncatedLaurent {
    pub fn new(center: Complex64, min_order: i32, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "empty coefficient window");
        Self { center, min_order, coeffs }
    }

    pub fn constant(center: Complex64, value: Complex64, min_order: i32, max_order: i32) -> Self {
        let mut s = Self::zero(center, min_order, max_order);
        if min_order <= 0 && 0 <= max_order {
            s.coeffs[(-min_order) as usize] = value;
        }
        s
    }

    pub fn zero(center: Complex64, min_order: i32, max_order: i32) -> Self {
        assert!(max_order >= min_order);
        Self {
            center,
            min_order,
            coeffs: vec![Complex64::new(0.0, 0.0); (max_order - min_order + 1) as usize],
        }
    }

    /// (s − center)^k within the window [min_order, max_order].
    pub fn monomial(center: Complex64, k: i32, min_order: i32, max_order: i32) -> Self {
        let mut s = Self::zero(center, min_order.min(k), max_order.max(k));
        let idx = (k - s.min_order) as usize;
        s.coeffs[idx] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn max_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    /// Term-by-term derivative d/ds: c_k (s−c)^k ↦ k c_k (s−c)^{k−1}.
    pub fn d_ds(&self) -> Self {
        let coeffs = (self.min_order..=self.max_order())
            .map(|k| self.coeff(k) * k as f64)
            .collect();
        Self { center: self.center, min_order: self.min_order - 1, coeffs }
    }

    /// The series of s ↦ f(−s); only meaningful for center 0.
    pub fn reflect(&self) -> Self {
        assert!(self.center.norm() < 1e-12, "reflection requires center 0");
        let coeffs = (self.min_order..=self.max_order())
            .map(|k| self.coeff(k) * if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 })
            .collect();
        Self { center: self.center, min_order: self.min_order, coeffs }
    }

    pub fn coeff(&self, order: i32) -> Complex64 {
        if order < self.min_order || order > self.max_order() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(order - self.min_order) as usize]
        }
    }

    /// First order whose coefficient exceeds the zero threshold, if any.
    pub fn leading_order(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .position(|c| c.norm() > ZERO_EPS)
            .map(|i| self.min_order + i as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.leading_order().is_none()
    }

    /// Coefficient of order −1 (the residue when the window covers it).
    pub fn residue(&self) -> Result<Complex64> {
        if self.min_order > -1 || self.max_order() < -1 {
            return Err(LaurentError::OrderRange(self.min_order, self.max_order()));
        }
        Ok(self.coeff(-1))
    }

    /// Order-0 coefficient: the value of the regular part at the center.
    pub fn holomorphic_part_value(&self) -> Result<Complex64> {
        if self.max_order() < 0 || self.min_order > 0 {
            return Err(LaurentError::OrderRange(self.min_order, self.max_order()));
        }
        Ok(self.coeff(0))
    }

    /// n-th derivative of the regular part at the center: n!·c_n.
    pub fn derivative(&self, n: u32) -> Result<Complex64> {
        let n_i = n as i32;
        if self.max_order() < n_i || self.min_order > n_i {
            return Err(LaurentError::OrderRange(self.min_order, self.max_order()));
        }
        let fact: f64 = (1..=n).map(|j| j as f64).product();
        Ok(self.coeff(n_i) * fact)
    }

    /// True when every negative-order coefficient is below the zero
    /// threshold (the series represents a function regular at the center).
    pub fn poles_cancel(&self) -> bool {
        (self.min_order..0).all(|k| self.coeff(k).norm() < ZERO_EPS)
    }

    /// Largest magnitude among negative-order coefficients.
    pub fn max_principal_magnitude(&self) -> f64 {
        (self.min_order..0).map(|k| self.coeff(k).norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let d = s - self.center;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            acc += c * d.powi(self.min_order + i as i32);
        }
        acc
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            center: self.center,
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.center - other.center).norm() > 1e-12 {
            return Err(LaurentError::CenterMismatch);
        }
        let min = self.min_order.min(other.min_order);
        // only orders both windows cover are trustworthy
        let max = self.max_order().min(other.max_order());
        if max < min {
            return Err(LaurentError::OrderRange(min, max));
        }
        let mut coeffs = Vec::with_capacity((max - min + 1) as usize);
        for k in min..=max {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Ok(Self { center: self.center, min_order: min, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.center - other.center).norm() > 1e-12 {
            return Err(LaurentError::CenterMismatch);
        }
        // A product coefficient at order k is complete only when every
        // contributing pair lies inside both windows: k ≤ min(a_max + lb,
        // b_max + la) with la, lb the leading orders.
        let la = self.leading_order().unwrap_or(self.min_order);
        let lb = other.leading_order().unwrap_or(other.min_order);
        let min = self.min_order + other.min_order;
        let max = (self.max_order() + lb).min(other.max_order() + la);
        if max < min {
            return Err(LaurentError::OrderRange(min, max));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (max - min + 1) as usize];
        for i in self.min_order..=self.max_order() {
            for j in other.min_order..=other.max_order() {
                let k = i + j;
                if k >= min && k <= max {
                    coeffs[(k - min) as usize] += self.coeff(i) * other.coeff(j);
                }
            }
        }
        Ok(Self { center: self.center, min_order: min, coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if (self.center - other.center).norm() > 1e-12 {
            return Err(LaurentError::CenterMismatch);
        }
        let lb = other.leading_order().ok_or(LaurentError::DivisionByZeroSeries)?;
        // invert the unit part u(s) of other = (s−c)^{lb}·u(s)
        let n_unit = (other.max_order() - lb + 1) as usize;
        let u: Vec<Complex64> = (0..n_unit).map(|i| other.coeff(lb + i as i32)).collect();
        let mut inv = vec![Complex64::new(0.0, 0.0); n_unit];
        inv[0] = Complex64::new(1.0, 0.0) / u[0];
        for k in 1..n_unit {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                s += u[j] * inv[k - j];
            }
            inv[k] = -s / u[0];
        }
        let inv_series = Self { center: self.center, min_order: -lb, coeffs: inv };
        self.mul(&inv_series)
    }
}

/// Dispatch wrapper matching the three arithmetic modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
}

pub fn series_arith(a: &TruncatedLaurent, b: &TruncatedLaurent, op: SeriesOp) -> Result<TruncatedLaurent> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b),
    }
}

/// Laurent coefficients at a fixed node count, without the adaptive
/// refinement loop. For callers whose integrand is expensive and whose
/// annulus of analyticity is known a priori (the trapezoid rule then
/// converges geometrically in the node count, so a modest fixed count
/// suffices).
pub fn laurent_of_fixed<F: Fn(Complex64) -> Complex64 + Sync>(
    f: &F,
    center: Complex64,
    min_order: i32,
    n_terms: usize,
    radius: f64,
    nodes: usize,
) -> TruncatedLaurent {
    let (coeffs, _) = contour_coeffs(f, center, min_order, n_terms, radius, nodes.max(16));
    TruncatedLaurent { center, min_order, coeffs }
}

/// Laurent coefficients of `f` at `center` by the trapezoidal contour rule
/// (≥ 256 nodes, refined once for a convergence check):
/// c_k = (1/2πi)∮ f(s)(s−center)^{−k−1} ds.
pub fn laurent_of<F: Fn(Complex64) -> Complex64 + Sync>(
    f: &F,
    center: Complex64,
    min_order: i32,
    n_terms: usize,
    radius: f64,
) -> Result<TruncatedLaurent> {
    laurent_of_with_nodes(f, center, min_order, n_terms, radius, 256)
}

pub fn laurent_of_with_nodes<F: Fn(Complex64) -> Complex64 + Sync>(
    f: &F,
    center: Complex64,
    min_order: i32,
    n_terms: usize,
    radius: f64,
    nodes: usize,
) -> Result<TruncatedLaurent> {
    let mut n = nodes.max(256);
    let (mut prev, fmax) = contour_coeffs(f, center, min_order, n_terms, radius, n);
    loop {
        n *= 2;
        let (cur, _) = contour_coeffs(f, center, min_order, n_terms, radius, n);
        let scale = cur.iter().map(|c| c.norm()).fold(1.0, f64::max);
        // order k carries an irreducible floating-noise floor ~ ε·max|f|·r^{-k}
        let ok = prev.iter().zip(&cur).enumerate().all(|(t, (a, b))| {
            let k = min_order + t as i32;
            let floor = 1e-13 * fmax * radius.powi(-k).max(1.0);
            (a - b).norm() <= 1e-10 * scale + floor
        });
        if ok {
            return Ok(TruncatedLaurent { center, min_order, coeffs: cur });
        }
        if n >= 1 << 14 {
            return Err(LaurentError::Contour);
        }
        prev = cur;
    }
}

fn contour_coeffs<F: Fn(Complex64) -> Complex64 + Sync>(
    f: &F,
    center: Complex64,
    min_order: i32,
    n_terms: usize,
    radius: f64,
    n: usize,
) -> (Vec<Complex64>, f64) {
    use rayon::prelude::*;
    let samples: Vec<(Complex64, Complex64)> = (0..n)
        .into_par_iter()
        .map(|j| {
            let th = TAU * j as f64 / n as f64;
            let w = Complex64::from_polar(1.0, th);
            (w, f(center + radius * w))
        })
        .collect();
    let fmax = samples.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let coeffs = (0..n_terms)
        .map(|t| {
            let k = min_order + t as i32;
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, fv) in &samples {
                acc += fv * w.powi(-k);
            }
            acc / n as f64 / radius.powi(k)
        })
        .collect();
    (coeffs, fmax)
}
