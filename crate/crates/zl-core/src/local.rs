//! Numeric models of planar singular points: the Milnor-number
//! decomposition, the delta-vs-codimension inequalities, multi-branch
//! composition, and the tangency-codimension combinatorics.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalError {
    #[error("branch multiplicity must be at least 1")]
    BranchMultiplicity,
    #[error("branch external codimension {ext_nu} below minimum {min} for multiplicity {m}")]
    BranchCodim { m: u64, ext_nu: i64, min: i64 },
    #[error("branch 2delta {two_delta} exceeds m*nu = {max}")]
    BranchDelta { two_delta: u64, max: u64 },
    #[error("tangency table needs at least two indices")]
    TableTooSmall,
    #[error("tangency table for {r} indices expects {expected} upper entries, got {got}")]
    TableEntryCount { r: usize, expected: usize, got: usize },
    #[error("triple rule violated at indices ({i}, {j}, {k}): minimum attained only once")]
    TripleRule { i: usize, j: usize, k: usize },
    #[error("branch count {branches} does not match tangency table size {table}")]
    BranchCountMismatch { branches: usize, table: usize },
    #[error("intersection table expects {expected} entries, got {got}")]
    EpsilonCount { expected: usize, got: usize },
    #[error("intersection multiplicity at ({i}, {j}) outside [1, {max}]")]
    EpsilonOutOfRange { i: usize, j: usize, max: u64 },
    #[error("point multiplicity must be at least 2")]
    PointMultiplicity,
    #[error("point multiplicity {m} below branch count {r}")]
    PointBranches { m: u64, r: u64 },
    #[error("point external codimension {ext_nu} below minimum {min}")]
    PointCodim { ext_nu: i64, min: i64 },
}

/// One local branch: multiplicity `m`, external codimension `ext_nu`, and
/// delta-invariant `2delta`.
///
/// A smooth branch carries `ext_nu = -1`; that convention makes branch
/// composition reproduce the ordinary-point profile exactly (see
/// [`compose_multibranch`]), and it is the only choice under which the
/// composed inequality `2delta <= m(ext_nu - m + r + 1)` survives an
/// exhaustive sweep with equality where expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchModel {
    m: u64,
    ext_nu: i64,
    two_delta: u64,
}

impl BranchModel {
    pub fn new(m: u64, ext_nu: i64, two_delta: u64) -> Result<Self, LocalError> {
        if m == 0 {
            return Err(LocalError::BranchMultiplicity);
        }
        let min = m as i64 - 2;
        if ext_nu < min {
            return Err(LocalError::BranchCodim { m, ext_nu, min });
        }
        let max = m * (ext_nu - min) as u64;
        if two_delta > max {
            return Err(LocalError::BranchDelta { two_delta, max });
        }
        Ok(BranchModel { m, ext_nu, two_delta })
    }

    /// A smooth branch: `m = 1`, `ext_nu = -1`, `2delta = 0`.
    pub fn smooth() -> Self {
        BranchModel { m: 1, ext_nu: -1, two_delta: 0 }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn ext_nu(&self) -> i64 {
        self.ext_nu
    }

    pub fn two_delta(&self) -> u64 {
        self.two_delta
    }

    /// The tangency-codimension `nu = ext_nu - m + 2`; nonnegative for every
    /// valid branch.
    pub fn y_codim(&self) -> u64 {
        (self.ext_nu - self.m as i64 + 2) as u64
    }

    pub fn is_smooth(&self) -> bool {
        self.m == 1 && self.ext_nu == -1
    }
}

/// Symmetric table of pairwise tangency codimensions `nu_ij` for `r >= 2`
/// branches, stored as the upper triangle in lexicographic pair order.
///
/// Construction enforces the triple rule: in every index triple the minimum
/// entry is attained at least twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangencyTable {
    r: usize,
    upper: Vec<u64>,
}

impl TangencyTable {
    /// `upper` lists `nu_ij` for pairs `(0,1), (0,2), ..., (r-2, r-1)`.
    pub fn new(r: usize, upper: Vec<u64>) -> Result<Self, LocalError> {
        if r < 2 {
            return Err(LocalError::TableTooSmall);
        }
        let expected = r * (r - 1) / 2;
        if upper.len() != expected {
            return Err(LocalError::TableEntryCount { r, expected, got: upper.len() });
        }
        let table = TangencyTable { r, upper };
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (a, b, c) = (table.get(i, j), table.get(i, k), table.get(j, k));
                    let min = a.min(b).min(c);
                    let hits = [a, b, c].iter().filter(|&&x| x == min).count();
                    if hits < 2 {
                        return Err(LocalError::TripleRule { i, j, k });
                    }
                }
            }
        }
        Ok(table)
    }

    /// All entries equal to `c`; always satisfies the triple rule.
    pub fn constant(r: usize, c: u64) -> Self {
        TangencyTable::new(r, vec![c; r * (r - 1) / 2]).expect("constant table is valid")
    }

    pub fn size(&self) -> usize {
        self.r
    }

    /// `nu_ij`, symmetric; `i == j` or indices out of range panic.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i != j && i < self.r && j < self.r, "bad tangency index");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.upper[pair_index(self.r, i, j)]
    }
}

/// Position of pair `(i, j)`, `i < j`, in lexicographic upper-triangle order.
fn pair_index(r: usize, i: usize, j: usize) -> usize {
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

/// Excess-contribution class of a singular point, with the rational lower
/// bound eta_min the proofs substitute for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcessClass {
    /// Unibranched, multiplicity 2: eta >= 5/6, attained by the ordinary cusp.
    CuspMult2,
    /// Unibranched, multiplicity >= 3: eta > 1/2 (strict; the bound 1/2 is
    /// never attained, so downstream arithmetic pairs it with strictness).
    CuspGeneral,
    /// Two or more branches: only eta >= 0 is used.
    MultiBranch,
}

impl ExcessClass {
    pub fn eta_min(&self) -> Rat {
        match self {
            ExcessClass::CuspMult2 => Rat::new(5, 6),
            ExcessClass::CuspGeneral => Rat::new(1, 2),
            ExcessClass::MultiBranch => Rat::zero(),
        }
    }

    pub fn eta_strict(&self) -> bool {
        matches!(self, ExcessClass::CuspGeneral)
    }
}

/// A singular point of the curve model: total multiplicity `m`, branch count
/// `r`, external codimension, and optionally the delta-invariant.
///
/// `ext_nu_alt` records the value the literal composition formula would give
/// under the other smooth-branch convention (`ext_nu = 0`); it is present
/// exactly when the two conventions disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointRepr", into = "PointRepr")]
pub struct SingularPointModel {
    m: u64,
    r: u64,
    ext_nu: i64,
    two_delta: Option<u64>,
    ext_nu_alt: Option<i64>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename = "SingularPointModel")]
struct PointRepr {
    m: u64,
    r: u64,
    ext_nu: i64,
    two_delta: Option<u64>,
    ext_nu_alt: Option<i64>,
}

impl TryFrom<PointRepr> for SingularPointModel {
    type Error = LocalError;
    fn try_from(r: PointRepr) -> Result<Self, Self::Error> {
        let mut point = SingularPointModel::new(r.m, r.r, r.ext_nu, r.two_delta)?;
        point.ext_nu_alt = r.ext_nu_alt;
        Ok(point)
    }
}

impl From<SingularPointModel> for PointRepr {
    fn from(p: SingularPointModel) -> Self {
        PointRepr {
            m: p.m,
            r: p.r,
            ext_nu: p.ext_nu,
            two_delta: p.two_delta,
            ext_nu_alt: p.ext_nu_alt,
        }
    }
}

impl SingularPointModel {
    pub fn new(
        m: u64,
        r: u64,
        ext_nu: i64,
        two_delta: Option<u64>,
    ) -> Result<Self, LocalError> {
        if m < 2 {
            return Err(LocalError::PointMultiplicity);
        }
        if r == 0 || m < r {
            return Err(LocalError::PointBranches { m, r });
        }
        // Unibranched points are branches, so branch admissibility applies;
        // multibranch points only need the composition floor r - 2.
        let min = if r == 1 { m as i64 - 2 } else { r as i64 - 2 };
        if ext_nu < min {
            return Err(LocalError::PointCodim { ext_nu, min });
        }
        Ok(SingularPointModel { m, r, ext_nu, two_delta, ext_nu_alt: None })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn ext_nu(&self) -> i64 {
        self.ext_nu
    }

    pub fn two_delta(&self) -> Option<u64> {
        self.two_delta
    }

    pub fn ext_nu_alt(&self) -> Option<i64> {
        self.ext_nu_alt
    }

    /// True when the two smooth-branch conventions yield different external
    /// codimensions for this point.
    pub fn has_convention_discrepancy(&self) -> bool {
        self.ext_nu_alt.is_some()
    }

    pub fn excess_class(&self) -> ExcessClass {
        match (self.r, self.m) {
            (1, 2) => ExcessClass::CuspMult2,
            (1, _) => ExcessClass::CuspGeneral,
            _ => ExcessClass::MultiBranch,
        }
    }
}

/// The ordinary point with `n` pairwise-transverse smooth branches:
/// `m = r = n`, `ext_nu = n - 2`, `2delta = n^2 - n`.
pub fn ordinary_point(n: u64) -> SingularPointModel {
    assert!(n >= 2, "an ordinary singular point needs n >= 2");
    SingularPointModel {
        m: n,
        r: n,
        ext_nu: n as i64 - 2,
        two_delta: Some(n * n - n),
        ext_nu_alt: None,
    }
}

/// Right-hand side `m(ext_nu - m + r + 1)` of the delta-codimension
/// inequality.
pub fn brn_rhs(point: &SingularPointModel) -> i64 {
    point.m as i64 * (point.ext_nu - point.m as i64 + point.r as i64 + 1)
}

/// Whether `2delta <= m(ext_nu - m + r + 1)`; `None` when the point carries
/// no delta-invariant.
pub fn brn_check(point: &SingularPointModel) -> Option<bool> {
    point.two_delta.map(|td| td as i64 <= brn_rhs(point))
}

/// Composes `r >= 2` branches meeting pairwise with tangency codimensions
/// `tangency` and intersection multiplicities `intersections` (upper
/// triangle, same pair order as the table) into one singular point:
///
/// * `m = sum m_i`
/// * `ext_nu = sum ext_nu_i + sum_j max_{i<j} nu_ij + 2r - 2`
/// * `2delta = sum 2delta_i + 2 sum eps_ij`
///
/// Each `eps_ij` must lie in `[1, min(m_i(nu_j + nu_ij + 1), m_j(nu_i +
/// nu_ij + 1))]` where `nu` is the branch tangency-codimension.
pub fn compose_multibranch(
    branches: &[BranchModel],
    tangency: &TangencyTable,
    intersections: &[u64],
) -> Result<SingularPointModel, LocalError> {
    let r = branches.len();
    if tangency.size() != r {
        return Err(LocalError::BranchCountMismatch { branches: r, table: tangency.size() });
    }
    let expected = r * (r - 1) / 2;
    if intersections.len() != expected {
        return Err(LocalError::EpsilonCount { expected, got: intersections.len() });
    }

    let mut eps_sum: u64 = 0;
    for i in 0..r {
        for j in i + 1..r {
            let nu_ij = tangency.get(i, j);
            let eps = intersections[pair_index(r, i, j)];
            let max = (branches[i].m() * (branches[j].y_codim() + nu_ij + 1))
                .min(branches[j].m() * (branches[i].y_codim() + nu_ij + 1));
            if eps == 0 || eps > max {
                return Err(LocalError::EpsilonOutOfRange { i, j, max });
            }
            eps_sum += eps;
        }
    }

    let m: u64 = branches.iter().map(|b| b.m()).sum();
    let column_max: i64 = (1..r)
        .map(|j| (0..j).map(|i| tangency.get(i, j)).max().unwrap() as i64)
        .sum();
    let ext_nu =
        branches.iter().map(|b| b.ext_nu()).sum::<i64>() + column_max + 2 * r as i64 - 2;
    let two_delta = branches.iter().map(|b| b.two_delta()).sum::<u64>() + 2 * eps_sum;

    let smooth = branches.iter().filter(|b| b.is_smooth()).count();
    let ext_nu_alt = (smooth > 0).then_some(ext_nu + smooth as i64);

    Ok(SingularPointModel {
        m,
        r: r as u64,
        ext_nu,
        two_delta: Some(two_delta),
        ext_nu_alt,
    })
}

/// Both sides of the column-maximum tangency inequality: the sum of the last
/// column is at most the sum of per-column maxima.
///
/// The inequality presumes the branch order puts a maximal last-column entry
/// in position `r - 2`; the table is relabeled internally to restore that,
/// so callers need not pre-sort.
pub fn check_s12(table: &TangencyTable) -> bool {
    let r = table.size();
    let mut perm: Vec<usize> = (0..r).collect();
    let k = (0..r - 1).max_by_key(|&i| table.get(i, r - 1)).unwrap();
    perm.swap(k, r - 2);
    let get = |i: usize, j: usize| table.get(perm[i], perm[j]);
    let lhs: u64 = (0..r - 1).map(|i| get(i, r - 1)).sum();
    let rhs: u64 = (1..r)
        .map(|j| (0..j).map(|i| get(i, j)).max().unwrap())
        .sum();
    lhs <= rhs
}

/// Milnor number of a unibranched point from its leading Puiseux pair and
/// the residual contribution: `(n-1)(m-1) + gcd(n,m) - 1 + mu_prime`.
pub fn milnor_decompose(n: u64, m: u64, mu_prime: u64) -> u64 {
    assert!(n >= 2 && n < m, "requires 2 <= n < m");
    (n - 1) * (m - 1) + n.gcd(&m) - 1 + mu_prime
}

/// Upper bound `n' * nu'` for the residual Milnor contribution at infinity.
pub fn mu_prime_bound(n_prime: u64, nu_prime: u64) -> u64 {
    assert!(n_prime >= 1, "gcd part is at least 1");
    n_prime * nu_prime
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_decompose(2, 3, 0), 2);
        assert_eq!(milnor_decompose(5, 6, 0), 20);
        assert_eq!(milnor_decompose(4, 6, 3), 19);
    }

    #[test]
    fn ordinary_points() {
        let p = ordinary_point(2);
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (2, 2, 0, Some(2)));
        let p = ordinary_point(3);
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (3, 3, 1, Some(6)));
        let p = ordinary_point(10);
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (10, 10, 8, Some(90)));
        assert!(!p.has_convention_discrepancy());
    }

    #[test]
    fn brn_examples() {
        let p = ordinary_point(3);
        assert_eq!(brn_rhs(&p), 6);
        assert_eq!(brn_check(&p), Some(true));

        // The ordinary cusp: 2delta = mu = 2.
        let cusp = SingularPointModel::new(2, 1, 1, Some(2)).unwrap();
        assert_eq!(brn_rhs(&cusp), 2);
        assert_eq!(brn_check(&cusp), Some(true));

        let p = SingularPointModel::new(3, 1, 3, Some(6)).unwrap();
        assert_eq!(brn_rhs(&p), 6);
        assert_eq!(brn_check(&p), Some(true));

        let free = SingularPointModel::new(3, 1, 3, None).unwrap();
        assert_eq!(brn_check(&free), None);
    }

    #[test]
    fn branch_validation() {
        assert!(BranchModel::new(1, -1, 0).is_ok());
        assert_eq!(BranchModel::new(0, 0, 0), Err(LocalError::BranchMultiplicity));
        assert_eq!(
            BranchModel::new(3, 0, 0),
            Err(LocalError::BranchCodim { m: 3, ext_nu: 0, min: 1 })
        );
        assert_eq!(
            BranchModel::new(2, 1, 3),
            Err(LocalError::BranchDelta { two_delta: 3, max: 2 })
        );
        assert_eq!(BranchModel::smooth().y_codim(), 0);
        assert!(BranchModel::smooth().is_smooth());
        assert!(!BranchModel::new(1, 0, 0).unwrap().is_smooth());
    }

    #[test]
    fn node_from_two_lines() {
        let p = compose_multibranch(
            &[BranchModel::smooth(), BranchModel::smooth()],
            &TangencyTable::constant(2, 0),
            &[1],
        )
        .unwrap();
        let o = ordinary_point(2);
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (o.m(), o.r(), o.ext_nu(), o.two_delta()));
        // The literal reading (smooth ext_nu = 0) lands higher; both kept.
        assert_eq!(p.ext_nu_alt(), Some(2));
        assert!(p.has_convention_discrepancy());
    }

    #[test]
    fn transverse_triple_matches_ordinary_point() {
        let p = compose_multibranch(
            &[BranchModel::smooth(), BranchModel::smooth(), BranchModel::smooth()],
            &TangencyTable::constant(3, 0),
            &[1, 1, 1],
        )
        .unwrap();
        let o = ordinary_point(3);
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (o.m(), o.r(), o.ext_nu(), o.two_delta()));
        assert_eq!(p.ext_nu_alt(), Some(4));
        assert_eq!(brn_check(&p), Some(true));
        assert_eq!(brn_rhs(&p), 6);
    }

    #[test]
    fn tangent_smooth_pair() {
        let p = compose_multibranch(
            &[BranchModel::smooth(), BranchModel::smooth()],
            &TangencyTable::constant(2, 2),
            &[3],
        )
        .unwrap();
        assert_eq!((p.m(), p.r(), p.ext_nu(), p.two_delta()), (2, 2, 2, Some(6)));
        assert_eq!(p.ext_nu_alt(), Some(4));
        // Equality case of the composed inequality.
        assert_eq!(brn_rhs(&p), 6);
        assert_eq!(brn_check(&p), Some(true));
    }

    #[test]
    fn epsilon_bounds_enforced() {
        let smooth2 = [BranchModel::smooth(), BranchModel::smooth()];
        let t = TangencyTable::constant(2, 2);
        assert_eq!(
            compose_multibranch(&smooth2, &t, &[4]),
            Err(LocalError::EpsilonOutOfRange { i: 0, j: 1, max: 3 })
        );
        assert_eq!(
            compose_multibranch(&smooth2, &t, &[0]),
            Err(LocalError::EpsilonOutOfRange { i: 0, j: 1, max: 3 })
        );
        assert_eq!(
            compose_multibranch(&smooth2, &TangencyTable::constant(3, 0), &[1, 1, 1]),
            Err(LocalError::BranchCountMismatch { branches: 2, table: 3 })
        );
        assert_eq!(
            compose_multibranch(&smooth2, &t, &[1, 1]),
            Err(LocalError::EpsilonCount { expected: 1, got: 2 })
        );
    }

    #[test]
    fn triple_rule_at_construction() {
        assert!(TangencyTable::new(3, vec![5, 1, 1]).is_ok());
        assert_eq!(
            TangencyTable::new(3, vec![1, 5, 2]),
            Err(LocalError::TripleRule { i: 0, j: 1, k: 2 })
        );
        assert_eq!(TangencyTable::new(1, vec![]), Err(LocalError::TableTooSmall));
        assert_eq!(
            TangencyTable::new(3, vec![1, 1]),
            Err(LocalError::TableEntryCount { r: 3, expected: 3, got: 2 })
        );
        let t = TangencyTable::new(3, vec![5, 1, 1]).unwrap();
        assert_eq!(t.get(1, 0), 5);
        assert_eq!(t.get(2, 1), 1);
    }

    #[test]
    fn s12_holds_on_valid_tables() {
        assert!(check_s12(&TangencyTable::constant(4, 3)));
        assert!(check_s12(&TangencyTable::new(3, vec![5, 1, 1]).unwrap()));
        // Needs the internal relabeling: the last column's maximum sits first.
        assert!(check_s12(&TangencyTable::new(3, vec![1, 4, 1]).unwrap()));
        assert!(check_s12(&TangencyTable::new(2, vec![7]).unwrap()));
    }

    #[test]
    fn excess_classes() {
        let cusp2 = SingularPointModel::new(2, 1, 1, Some(2)).unwrap();
        assert_eq!(cusp2.excess_class(), ExcessClass::CuspMult2);
        assert_eq!(cusp2.excess_class().eta_min(), Rat::new(5, 6));
        assert!(!cusp2.excess_class().eta_strict());

        let cusp3 = SingularPointModel::new(3, 1, 3, None).unwrap();
        assert_eq!(cusp3.excess_class(), ExcessClass::CuspGeneral);
        assert_eq!(cusp3.excess_class().eta_min(), Rat::new(1, 2));
        assert!(cusp3.excess_class().eta_strict());

        assert_eq!(ordinary_point(2).excess_class(), ExcessClass::MultiBranch);
        assert_eq!(ordinary_point(5).excess_class().eta_min(), Rat::zero());
    }

    #[test]
    fn point_validation() {
        assert_eq!(
            SingularPointModel::new(1, 1, 0, None),
            Err(LocalError::PointMultiplicity)
        );
        assert_eq!(
            SingularPointModel::new(2, 3, 1, None),
            Err(LocalError::PointBranches { m: 2, r: 3 })
        );
        assert_eq!(
            SingularPointModel::new(4, 1, 1, None),
            Err(LocalError::PointCodim { ext_nu: 1, min: 2 })
        );
        assert!(SingularPointModel::new(4, 2, 0, None).is_ok());
    }

    #[test]
    fn mu_prime_bound_examples() {
        assert_eq!(mu_prime_bound(1, 5), 5);
        assert_eq!(mu_prime_bound(3, 0), 0);
        assert_eq!(mu_prime_bound(3, 4), 12);
    }
}
