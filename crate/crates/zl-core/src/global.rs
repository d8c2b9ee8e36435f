//! The abstract configuration of a curve with one place at infinity and its
//! global constraint system: double-point count D, energy E, the
//! multiplicity and codimension budgets, and the gap D - E whose positivity
//! certifies impossibility.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rat;
use crate::local::{brn_rhs, SingularPointModel};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlobalError {
    #[error("pole orders must satisfy 1 <= p < q, got p={p}, q={q}")]
    PoleOrder { p: u64, q: u64 },
    #[error("p must not divide q, got p={p}, q={q}")]
    PDividesQ { p: u64, q: u64 },
    #[error("p_prime must equal gcd(p, q) = {expected}, got {got}")]
    PPrimeMismatch { expected: u64, got: u64 },
    #[error("mu'_inf = {mu} exceeds p' * nu'_inf = {max}")]
    MuPrimeTooLarge { mu: u64, max: u64 },
    #[error("point {index} carries no 2delta")]
    MissingTwoDelta { index: usize },
}

/// A curve with one place at infinity: genus `g`, pole orders `p < q` of the
/// coordinate functions (`q` is the degree), the finite singular points, and
/// the codimension data at infinity.
///
/// `p_prime = gcd(p, q)`; since `p` never divides `q`, `p >= 2` and
/// `p_prime <= p/2` hold automatically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub struct CurveProfile {
    g: u32,
    p: u64,
    q: u64,
    p_prime: u64,
    points: Vec<SingularPointModel>,
    nu_prime_inf: u64,
    mu_prime_inf: Option<u64>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename = "CurveProfile")]
struct ProfileRepr {
    g: u32,
    p: u64,
    q: u64,
    p_prime: u64,
    points: Vec<SingularPointModel>,
    nu_prime_inf: u64,
    mu_prime_inf: Option<u64>,
}

impl TryFrom<ProfileRepr> for CurveProfile {
    type Error = GlobalError;
    fn try_from(r: ProfileRepr) -> Result<Self, Self::Error> {
        let profile =
            CurveProfile::new(r.g, r.p, r.q, r.points, r.nu_prime_inf, r.mu_prime_inf)?;
        if r.p_prime != profile.p_prime {
            return Err(GlobalError::PPrimeMismatch {
                expected: profile.p_prime,
                got: r.p_prime,
            });
        }
        Ok(profile)
    }
}

impl From<CurveProfile> for ProfileRepr {
    fn from(c: CurveProfile) -> Self {
        ProfileRepr {
            g: c.g,
            p: c.p,
            q: c.q,
            p_prime: c.p_prime,
            points: c.points,
            nu_prime_inf: c.nu_prime_inf,
            mu_prime_inf: c.mu_prime_inf,
        }
    }
}

impl CurveProfile {
    pub fn new(
        g: u32,
        p: u64,
        q: u64,
        points: Vec<SingularPointModel>,
        nu_prime_inf: u64,
        mu_prime_inf: Option<u64>,
    ) -> Result<Self, GlobalError> {
        if p == 0 || p >= q {
            return Err(GlobalError::PoleOrder { p, q });
        }
        if q % p == 0 {
            return Err(GlobalError::PDividesQ { p, q });
        }
        let p_prime = p.gcd(&q);
        if let Some(mu) = mu_prime_inf {
            let max = p_prime * nu_prime_inf;
            if mu > max {
                return Err(GlobalError::MuPrimeTooLarge { mu, max });
            }
        }
        Ok(CurveProfile { g, p, q, p_prime, points, nu_prime_inf, mu_prime_inf })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p_prime(&self) -> u64 {
        self.p_prime
    }

    pub fn points(&self) -> &[SingularPointModel] {
        &self.points
    }

    pub fn nu_prime_inf(&self) -> u64 {
        self.nu_prime_inf
    }

    pub fn mu_prime_inf(&self) -> Option<u64> {
        self.mu_prime_inf
    }

    /// Number of finite singular points.
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Total branch count `R = sum (r_i - 1)`.
    pub fn branch_count_r(&self) -> u64 {
        self.points.iter().map(|pt| pt.r() - 1).sum()
    }

    /// Number of double points at finite distance:
    /// `D = (p-1)(q-1) - p' + 1 - 2g`.
    pub fn double_points(&self) -> i64 {
        (self.p as i64 - 1) * (self.q as i64 - 1) - self.p_prime as i64 + 1
            - 2 * self.g as i64
    }

    /// Energy `E = sum m_i(ext_nu_i - m_i + r_i + 1) + p' * nu'_inf`, the
    /// maximal amount of D the configuration can absorb.
    pub fn energy(&self) -> Rat {
        let finite: i64 = self.points.iter().map(brn_rhs).sum();
        Rat::int(finite) + Rat::from(self.p_prime * self.nu_prime_inf)
    }

    /// The gap `D - E`; a realizable configuration must have gap <= 0, so a
    /// positive gap certifies impossibility.
    pub fn delta_gap(&self) -> Rat {
        Rat::int(self.double_points()) - self.energy()
    }

    /// Multiplicity budget: `sum (m_i - r_i) <= p + 2g - 1`.
    pub fn mult_constraint_ok(&self) -> bool {
        let lhs: u64 = self.points.iter().map(|pt| pt.m() - pt.r()).sum();
        lhs as i64 <= self.p as i64 + 2 * self.g as i64 - 1
    }

    /// Codimension budget:
    /// `sum ext_nu_i + nu'_inf <= p + q - 2 + 4g + R - sum eta_min(i)`.
    ///
    /// The branch term `+R` keeps the budget consistent with the
    /// multi-branch constraint system; it vanishes in the cuspidal setting.
    pub fn bmy_constraint_ok(&self) -> bool {
        self.bmy_constraint_ok_variant(true)
    }

    /// [`CurveProfile::bmy_constraint_ok`] with the branch term optional;
    /// `include_branch_term = false` evaluates the narrower budget without
    /// `+R` that one display states for the general case.
    pub fn bmy_constraint_ok_variant(&self, include_branch_term: bool) -> bool {
        let lhs = Rat::int(
            self.points.iter().map(|pt| pt.ext_nu()).sum::<i64>()
                + self.nu_prime_inf as i64,
        );
        let r_term = if include_branch_term { self.branch_count_r() } else { 0 };
        let eta: Rat = self
            .points
            .iter()
            .map(|pt| pt.excess_class().eta_min())
            .sum();
        let rhs = Rat::int(
            self.p as i64 + self.q as i64 - 2 + 4 * self.g as i64 + r_term as i64,
        ) - eta;
        lhs <= rhs
    }

    /// Genus formula: `(q-1)(q-2) - sum 2delta_i - two_delta_inf = 2g`.
    /// Every point must carry its delta-invariant.
    pub fn genus_formula_ok(&self, two_delta_inf: u64) -> Result<bool, GlobalError> {
        let mut sum: i64 = 0;
        for (index, pt) in self.points.iter().enumerate() {
            match pt.two_delta() {
                Some(td) => sum += td as i64,
                None => return Err(GlobalError::MissingTwoDelta { index }),
            }
        }
        let lhs = (self.q as i64 - 1) * (self.q as i64 - 2) - sum - two_delta_inf as i64;
        Ok(lhs == 2 * self.g as i64)
    }
}
