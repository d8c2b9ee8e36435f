//! The twelve bound functions `I_a ... I_f` and `J_a ... J_f`, their
//! strictness-aware predicates, the envelope maxima `I(g)` and `J(g,R)`, and
//! integer maximum-N extraction including the low-genus refinements.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{Rat, Surd};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("J-family bounds require at least one branch (R >= 1)")]
    JFamilyNeedsBranch,
}

/// The two bound families: `I` for simply connected curves (no branches at
/// infinity beyond the place itself), `J` for first Betti number `2g + R`
/// with `R >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    I,
    J,
}

impl Family {
    pub fn members(self) -> [BoundKind; 6] {
        use BoundKind::*;
        match self {
            Family::I => [Ia, Ib, Ic, Id, Ie, If],
            Family::J => [Ja, Jb, Jc, Jd, Je, Jf],
        }
    }
}

/// One of the twelve bound functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "I_a")]
    Ia,
    #[serde(rename = "I_b")]
    Ib,
    #[serde(rename = "I_c")]
    Ic,
    #[serde(rename = "I_d")]
    Id,
    #[serde(rename = "I_e")]
    Ie,
    #[serde(rename = "I_f")]
    If,
    #[serde(rename = "J_a")]
    Ja,
    #[serde(rename = "J_b")]
    Jb,
    #[serde(rename = "J_c")]
    Jc,
    #[serde(rename = "J_d")]
    Jd,
    #[serde(rename = "J_e")]
    Je,
    #[serde(rename = "J_f")]
    Jf,
}

impl BoundKind {
    pub const ALL: [BoundKind; 12] = [
        BoundKind::Ia,
        BoundKind::Ib,
        BoundKind::Ic,
        BoundKind::Id,
        BoundKind::Ie,
        BoundKind::If,
        BoundKind::Ja,
        BoundKind::Jb,
        BoundKind::Jc,
        BoundKind::Jd,
        BoundKind::Je,
        BoundKind::Jf,
    ];

    pub fn family(self) -> Family {
        use BoundKind::*;
        match self {
            Ia | Ib | Ic | Id | Ie | If => Family::I,
            _ => Family::J,
        }
    }

    /// Whether the theorem excludes `N > f` (strict) rather than `N >= f`.
    ///
    /// Note the asymmetry: `I_e` is strict while `J_e` is not.
    pub fn strict(self) -> bool {
        use BoundKind::*;
        matches!(self, Ic | Id | Ie | If | Jc | Jd | Jf)
    }

    pub fn name(self) -> &'static str {
        use BoundKind::*;
        match self {
            Ia => "I_a",
            Ib => "I_b",
            Ic => "I_c",
            Id => "I_d",
            Ie => "I_e",
            If => "I_f",
            Ja => "J_a",
            Jb => "J_b",
            Jc => "J_c",
            Jd => "J_d",
            Je => "J_e",
            Jf => "J_f",
        }
    }

    /// Coefficient table of this bound.
    pub fn def(self) -> BoundDef {
        use BoundKind::*;
        let r = Rat::new;
        let z = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        match self {
            Ia => BoundDef { linear: [r(2, 1), r(0, 1), r(3, 1)], radicand: z },
            Ib => BoundDef { linear: [r(24, 11), r(0, 1), r(20, 11)], radicand: z },
            Ic => BoundDef {
                linear: [r(2, 1), r(0, 1), r(2, 3)],
                radicand: [r(0, 1), r(0, 1), r(0, 1), r(20, 3), r(0, 1), r(28, 9)],
            },
            Id => BoundDef {
                linear: [r(2, 1), r(0, 1), r(-1, 4)],
                radicand: [r(0, 1), r(0, 1), r(0, 1), r(7, 1), r(0, 1), r(177, 16)],
            },
            Ie => BoundDef { linear: [r(36, 17), r(0, 1), r(18, 17)], radicand: z },
            If => BoundDef {
                linear: [r(29, 14), r(0, 1), r(31, 28)],
                radicand: [
                    r(1, 196),
                    r(0, 1),
                    r(0, 1),
                    r(1067, 196),
                    r(0, 1),
                    r(793, 784),
                ],
            },
            Ja => BoundDef { linear: [r(2, 1), r(1, 1), r(3, 1)], radicand: z },
            Jb => BoundDef { linear: [r(24, 11), r(17, 11), r(18, 11)], radicand: z },
            Jc => BoundDef {
                linear: [r(2, 1), r(1, 1), r(2, 3)],
                radicand: [r(0, 1), r(0, 1), r(0, 1), r(20, 3), r(4, 1), r(22, 9)],
            },
            Jd => BoundDef {
                linear: [r(2, 1), r(1, 1), r(-1, 4)],
                radicand: [r(0, 1), r(0, 1), r(0, 1), r(7, 1), r(5, 1), r(177, 16)],
            },
            Je => BoundDef { linear: [r(36, 17), r(23, 17), r(18, 17)], radicand: z },
            Jf => BoundDef {
                linear: [r(29, 14), r(17, 14), r(31, 28)],
                radicand: [
                    r(1, 196),
                    r(6, 196),
                    r(9, 196),
                    r(1067, 196),
                    r(513, 196),
                    r(793, 784),
                ],
            },
        }
    }
}

/// Coefficients of one bound: the value at `(g, R)` is
/// `linear . (g, R, 1) + sqrt(radicand . (g^2, gR, R^2, g, R, 1))`.
///
/// Keeping the twelve bounds as data means one evaluator serves all of them;
/// strictness never branches into the arithmetic.
#[derive(Debug, Clone)]
pub struct BoundDef {
    pub linear: [Rat; 3],
    pub radicand: [Rat; 6],
}

impl BoundDef {
    /// Raw evaluation at arbitrary rational `(g, R)`, with no family
    /// preconditions. The radicand is nonnegative whenever `g, R >= 0`.
    pub fn eval(&self, g: &Rat, r: &Rat) -> Result<Surd, crate::exact::ExactError> {
        let l = &self.linear[0] * g + &self.linear[1] * r + &self.linear[2];
        let s = &self.radicand[0] * g.square()
            + &self.radicand[1] * g * r
            + &self.radicand[2] * r.square()
            + &self.radicand[3] * g
            + &self.radicand[4] * r
            + &self.radicand[5];
        Surd::new(l, s)
    }
}

/// Topological profile of the curve: geometric genus `g` and total branch
/// count `R` (so the first Betti number is `2g + R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusProfile {
    pub g: u32,
    /// Written `R` in all renderings.
    pub r: u32,
}

impl GenusProfile {
    pub fn new(g: u32, r: u32) -> Self {
        GenusProfile { g, r }
    }

    /// First Betti number `2g + R`.
    pub fn b1(&self) -> u64 {
        2 * u64::from(self.g) + u64::from(self.r)
    }
}

fn check_family(kind_family: Family, profile: &GenusProfile) -> Result<(), BoundsError> {
    if kind_family == Family::J && profile.r == 0 {
        return Err(BoundsError::JFamilyNeedsBranch);
    }
    Ok(())
}

/// Exact value of the named bound at the profile. The six I-functions ignore
/// `R`; the J family rejects `R = 0`.
pub fn eval_bound(kind: BoundKind, profile: &GenusProfile) -> Result<Surd, BoundsError> {
    check_family(kind.family(), profile)?;
    let g = Rat::from(u64::from(profile.g));
    let r = Rat::from(u64::from(profile.r));
    Ok(kind
        .def()
        .eval(&g, &r)
        .expect("nonnegative radicand for nonnegative profile"))
}

/// Whether `N` satisfies the bound: `N >= f` for non-strict kinds, `N > f`
/// for strict ones, decided by exact surd comparison.
pub fn holds(kind: BoundKind, n: u64, profile: &GenusProfile) -> Result<bool, BoundsError> {
    let f = eval_bound(kind, profile)?;
    let cmp = f.cmp_rat(&Rat::from(n));
    Ok(if kind.strict() {
        cmp == std::cmp::Ordering::Less
    } else {
        cmp != std::cmp::Ordering::Greater
    })
}

/// Exact maximum of the six family members at the profile.
pub fn envelope(profile: &GenusProfile, family: Family) -> Result<Surd, BoundsError> {
    let mut best: Option<Surd> = None;
    for kind in family.members() {
        let v = eval_bound(kind, profile)?;
        best = Some(match best {
            Some(b) if b >= v => b,
            _ => v,
        });
    }
    Ok(best.expect("six members"))
}

/// Smallest integer `N` satisfying this single bound: `ceil(f)` for
/// non-strict kinds, `floor(f) + 1` for strict ones.
pub fn threshold(kind: BoundKind, profile: &GenusProfile) -> Result<BigInt, BoundsError> {
    let f = eval_bound(kind, profile)?;
    let floor = f.floor();
    Ok(if kind.strict() || !f.is_integer() {
        floor + 1
    } else {
        floor
    })
}

/// Largest `N` not excluded by the family's theorem: one less than the
/// smallest integer at which all six inequalities hold simultaneously.
pub fn max_allowed_n(profile: &GenusProfile, family: Family) -> Result<i64, BoundsError> {
    let mut max = BigInt::from(0);
    for kind in family.members() {
        let t = threshold(kind, profile)?;
        if t > max {
            max = t;
        }
    }
    Ok((max - BigInt::from(1)).to_i64().expect("threshold fits i64 for u32 profiles"))
}

/// [`max_allowed_n`] with the three remark-level refinements applied:
/// `(I, g=1) -> 5`, `(J, g=0, R=1) -> 3`, `(J, g=0, R=2) -> 5`.
pub fn refined_max_n(profile: &GenusProfile, family: Family) -> Result<i64, BoundsError> {
    check_family(family, profile)?;
    Ok(match (family, profile.g, profile.r) {
        (Family::I, 1, _) => 5,
        (Family::J, 0, 1) => 3,
        (Family::J, 0, 2) => 5,
        _ => max_allowed_n(profile, family)?,
    })
}

/// The conjectured cap on the number of singular points: `2(2g + R) + 1`.
pub fn zl_bound(profile: &GenusProfile) -> u64 {
    2 * profile.b1() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(g: u32, r: u32) -> GenusProfile {
        GenusProfile::new(g, r)
    }

    #[test]
    fn strictness_partition() {
        use BoundKind::*;
        let non_strict: Vec<_> = BoundKind::ALL.iter().filter(|k| !k.strict()).collect();
        assert_eq!(non_strict, [&Ia, &Ib, &Ja, &Jb, &Je]);
    }

    #[test]
    fn eval_examples() {
        let ia0 = eval_bound(BoundKind::Ia, &gp(0, 0)).unwrap();
        assert_eq!(ia0, Surd::rational(Rat::int(3)));

        // A disguised integer: the radicand is a perfect square.
        let id1 = eval_bound(BoundKind::Id, &gp(1, 0)).unwrap();
        assert_eq!(id1.linear_part(), &Rat::new(7, 4));
        assert_eq!(id1.radicand(), &Rat::new(289, 16));
        assert!(id1.is_integer());
        assert_eq!(id1, Surd::rational(Rat::int(6)));

        let ib4 = eval_bound(BoundKind::Ib, &gp(4, 0)).unwrap();
        assert_eq!(ib4, Surd::rational(Rat::new(116, 11)));

        let jb01 = eval_bound(BoundKind::Jb, &gp(0, 1)).unwrap();
        assert_eq!(jb01, Surd::rational(Rat::new(35, 11)));
    }

    #[test]
    fn j_family_rejects_zero_branches() {
        assert_eq!(
            eval_bound(BoundKind::Jc, &gp(3, 0)),
            Err(BoundsError::JFamilyNeedsBranch)
        );
        assert!(envelope(&gp(3, 0), Family::J).is_err());
        assert!(refined_max_n(&gp(0, 0), Family::J).is_err());
        assert!(eval_bound(BoundKind::Ic, &gp(3, 0)).is_ok());
    }

    #[test]
    fn holds_examples() {
        assert!(!holds(BoundKind::Id, 6, &gp(1, 0)).unwrap());
        assert!(holds(BoundKind::Ia, 5, &gp(1, 0)).unwrap());
        assert!(holds(BoundKind::Jc, 5, &gp(0, 1)).unwrap());
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(
            envelope(&gp(747, 0), Family::I).unwrap(),
            Surd::rational(Rat::new(17948, 11))
        );
        let e0 = envelope(&gp(0, 0), Family::I).unwrap();
        assert_eq!(e0.linear_part(), &Rat::new(-1, 4));
        assert_eq!(e0.radicand(), &Rat::new(177, 16));
        let j01 = envelope(&gp(0, 1), Family::J).unwrap();
        assert_eq!(j01.linear_part(), &Rat::new(3, 4));
        assert_eq!(j01.radicand(), &Rat::new(257, 16));
    }

    #[test]
    fn integer_thresholds() {
        let t = |g, r, family: Family| -> Vec<i64> {
            family
                .members()
                .iter()
                .map(|&k| threshold(k, &gp(g, r)).unwrap().to_i64().unwrap())
                .collect()
        };
        assert_eq!(t(0, 0, Family::I), [3, 2, 3, 4, 2, 3]);
        assert_eq!(t(1, 0, Family::I), [5, 4, 6, 7, 4, 6]);
        assert_eq!(t(2, 0, Family::I), [7, 7, 9, 9, 6, 9]);
        assert_eq!(t(0, 1, Family::J), [4, 4, 5, 5, 3, 5]);
        assert_eq!(t(0, 2, Family::J), [5, 5, 6, 7, 4, 7]);

        assert_eq!(max_allowed_n(&gp(0, 0), Family::I).unwrap(), 3);
        assert_eq!(max_allowed_n(&gp(1, 0), Family::I).unwrap(), 6);
        assert_eq!(max_allowed_n(&gp(2, 0), Family::I).unwrap(), 8);
        assert_eq!(max_allowed_n(&gp(0, 1), Family::J).unwrap(), 4);
        assert_eq!(max_allowed_n(&gp(0, 2), Family::J).unwrap(), 6);
    }

    #[test]
    fn jf_threshold_is_rational_but_not_integer() {
        // J_f(0, 2) = 99/28 + sqrt(5041/784) = 85/14, a disguised rational.
        let v = eval_bound(BoundKind::Jf, &gp(0, 2)).unwrap();
        assert_eq!(v.cmp_rat(&Rat::new(85, 14)), std::cmp::Ordering::Equal);
        assert!(!v.is_integer());
        assert_eq!(threshold(BoundKind::Jf, &gp(0, 2)).unwrap(), 7.into());
    }

    #[test]
    fn refinements() {
        assert_eq!(refined_max_n(&gp(1, 0), Family::I).unwrap(), 5);
        assert_eq!(refined_max_n(&gp(0, 1), Family::J).unwrap(), 3);
        assert_eq!(refined_max_n(&gp(0, 2), Family::J).unwrap(), 5);
        assert_eq!(refined_max_n(&gp(2, 0), Family::I).unwrap(), 8);
        // Unrefined elsewhere: thresholds at (0, 3) are [6,7,8,8,6,8].
        assert_eq!(refined_max_n(&gp(0, 3), Family::J).unwrap(), 7);
        assert_eq!(
            refined_max_n(&gp(1, 0), Family::I).unwrap() as u64,
            zl_bound(&gp(1, 0))
        );
    }

    #[test]
    fn zl_bound_examples() {
        assert_eq!(zl_bound(&gp(0, 0)), 1);
        assert_eq!(zl_bound(&gp(1, 0)), 5);
        assert_eq!(zl_bound(&gp(0, 1)), 3);
        assert_eq!(zl_bound(&gp(2, 3)), 15);
    }

    #[test]
    fn j_specializes_to_i_at_zero_branches_except_under_the_radical() {
        let zero = Rat::zero();
        for g in [0i64, 1, 5, 17] {
            let g = Rat::int(g);
            let ja = BoundKind::Ja.def().eval(&g, &zero).unwrap();
            let ia = BoundKind::Ia.def().eval(&g, &zero).unwrap();
            assert_eq!(ja, ia);
            let jc = BoundKind::Jc.def().eval(&g, &zero).unwrap();
            let ic = BoundKind::Ic.def().eval(&g, &zero).unwrap();
            assert_eq!(jc.linear_part(), ic.linear_part());
            assert_eq!(ic.radicand() - jc.radicand(), Rat::new(2, 3));
        }
    }
}
