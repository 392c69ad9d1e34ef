//! The regularization engine: exponent sets describing cusp profiles,
//! the closed-form partial Mellin transform h_T, regularizing kernels,
//! the continued transform R(s,·) / R*(s,·), truncation, and the
//! regularized integral with two independent numeric oracles.

use crate::laurent::{self};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegularizeError {
    #[error("pole of the closed form at s = {0}")]
    Pole(Complex64),
    #[error("sample is not finitely regularizable: {0}")]
    NonRegularizable(String),
    #[error("residual exponent with Re α ≥ 1/2 is not integrable")]
    Integrability,
    #[error("quadrature failed to converge: {0}")]
    Convergence(String),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
}

pub type Result<T> = std::result::Result<T, RegularizeError>;

/// One monomial t^{1/2+α} log^n t of a cusp profile, with its full
/// coefficient c (log-power factorials already absorbed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentTerm {
    pub c: Complex64,
    pub alpha: Complex64,
    pub n: u32,
}

/// The finite exponent set of a regularizable function: the non-decaying
/// part of its constant term is f(t) = Σ c_i t^{1/2+α_i} log^{n_i} t.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ExponentSet {
    pub terms: Vec<ExponentTerm>,
}

impl ExponentSet {
    pub fn empty() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn of(terms: Vec<ExponentTerm>) -> Self {
        let mut s = Self { terms };
        s.normalize();
        s
    }

    /// Merge terms with equal (α, n) and prune negligible coefficients.
    pub fn normalize(&mut self) {
        let mut merged: Vec<ExponentTerm> = Vec::new();
        for t in &self.terms {
            if let Some(m) = merged
                .iter_mut()
                .find(|m| m.n == t.n && (m.alpha - t.alpha).norm() < 1e-12)
            {
                m.c += t.c;
            } else {
                merged.push(*t);
            }
        }
        merged.retain(|t| t.c.norm() > 1e-14);
        merged.sort_by(|a, b| {
            (b.alpha.re, b.n)
                .partial_cmp(&(a.alpha.re, a.n))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self.terms = merged;
    }

    /// Exponent set of a pointwise product (cusp profiles multiply).
    pub fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExponentTerm {
                    c: a.c * b.c,
                    // t^{1/2+α}·t^{1/2+β} = t^{1/2 + (α+β+1/2)}
                    alpha: a.alpha + b.alpha + 0.5,
                    n: a.n + b.n,
                });
            }
        }
        Self::of(terms)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self::of(self.terms.iter().map(|t| ExponentTerm { c: a * t.c, ..*t }).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::of(terms)
    }

    /// f(t) = Σ c t^{1/2+α} logⁿ t.
    pub fn eval(&self, t: f64) -> Complex64 {
        let lt = t.ln();
        self.terms
            .iter()
            .map(|term| {
                term.c
                    * Complex64::new(t, 0.0).powc(Complex64::new(0.5, 0.0) + term.alpha)
                    * lt.powi(term.n as i32)
            })
            .sum()
    }

    pub fn max_re_alpha(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Closed form of ∫₀^T f(t) t^{s−1/2} dt/t for f given by the exponent
/// set: h_T(s) = Σ_i c_i Σ_{m=0}^{n_i} ((−1)^{n_i−m}/m!) n_i! ·
/// T^{s+α_i} log^m T/(s+α_i)^{n_i−m+1}.
///
/// (Stored coefficients are the full monomial coefficients, so the n_i!
/// restores the 1/n_i! of the c-convention in which the closed form is
/// usually quoted.)
pub fn h_t(s: Complex64, terms: &ExponentSet, big_t: f64) -> Result<Complex64> {
    let log_t = big_t.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for term in &terms.terms {
        let sa = s + term.alpha;
        if sa.norm() < 1e-12 {
            return Err(RegularizeError::Pole(s));
        }
        let t_pow = Complex64::new(big_t, 0.0).powc(sa);
        let n = term.n;
        let mut m_fact = 1.0;
        let mut inner = Complex64::new(0.0, 0.0);
        for m in 0..=n {
            if m > 0 {
                m_fact *= m as f64;
            }
            let sign = if (n - m) % 2 == 0 { 1.0 } else { -1.0 };
            inner += sign / m_fact * log_t.powi(m as i32) / sa.powu(n - m + 1);
        }
        let n_fact: f64 = (1..=n).map(|j| j as f64).product();
        acc += term.c * n_fact * t_pow * inner;
    }
    Ok(acc)
}

// --- the rest of the engine lives below; implemented together with the
// --- truncation and oracle machinery.

pub use engine::*;
mod engine;
