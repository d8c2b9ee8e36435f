//! Property tests tying the exact arithmetic to independent oracles and
//! pinning the structural invariants the other modules rely on.

use num_bigint::BigInt;
use proptest::prelude::*;

use zl_core::bounds::{
    envelope, eval_bound, holds, threshold, BoundKind, Family, GenusProfile,
};
use zl_core::chains::{thm1_finite_chain, ChainParams, ChainTrace};
use zl_core::exact::{poly_eval, poly_identity_check, poly_mul};
use zl_core::local::{
    brn_check, compose_multibranch, ordinary_point, BranchModel, TangencyTable,
};
use zl_core::verify::exchange_term;
use zl_core::{Rat, Surd};

fn rat(max: i64) -> impl Strategy<Value = Rat> {
    (-max..=max, 1..=max).prop_map(|(n, d)| Rat::new(n, d))
}

fn surd() -> impl Strategy<Value = Surd> {
    (rat(50), 0..=2500_i64, 1..=50_i64)
        .prop_map(|(l, sn, sd)| Surd::new(l, Rat::new(sn, sd)).unwrap())
}

proptest! {
    // The four Rat operations against an i128 cross-multiplication oracle.
    #[test]
    fn rat_ops_match_i128_oracle(a in -9999_i64..=9999, b in 1_i64..=9999,
                                 c in -9999_i64..=9999, d in 1_i64..=9999) {
        let x = Rat::new(a, b);
        let y = Rat::new(c, d);
        let eq = |r: &Rat, num: i128, den: i128| {
            let rn: BigInt = r.numer().clone();
            let rd: BigInt = r.denom().clone();
            // r == num/den  <=>  rn * den == num * rd
            prop_assert_eq!(rn * BigInt::from(den), BigInt::from(num) * rd);
            Ok(())
        };
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        eq(&(&x + &y), a * d + c * b, b * d)?;
        eq(&(&x - &y), a * d - c * b, b * d)?;
        eq(&(&x * &y), a * c, b * d)?;
        if c != 0 {
            eq(&(&x / &y), a * d, b * c)?;
        }
    }

    // floor and the truncated decimal rendering bracket the value.
    #[test]
    fn rat_floor_and_decimal_truncate_downward(x in rat(9999), digits in 1_u32..=6) {
        let fl = Rat::from(x.floor());
        prop_assert!(fl <= x);
        prop_assert!(x < &fl + &Rat::one());

        let scaled: BigInt = x.decimal_string(digits).replace('.', "").parse().unwrap();
        let shown = &Rat::from(scaled) * &Rat::new(1, 10_i64.pow(digits));
        let step = Rat::new(1, 10_i64.pow(digits));
        prop_assert!(shown <= x);
        prop_assert!(x < &shown + &step);
    }

    // Surd-vs-rational comparison against a squaring oracle.
    #[test]
    fn surd_cmp_rat_matches_squaring(s in surd(), r in rat(200)) {
        let t = &r - s.linear_part();
        let oracle = if t < Rat::zero() {
            std::cmp::Ordering::Greater
        } else {
            s.radicand().cmp(&t.square())
        };
        prop_assert_eq!(s.cmp_rat(&r), oracle);
    }

    // The surd order is total: antisymmetric, transitive, floor-consistent.
    #[test]
    fn surd_order_is_total(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        let fl = Rat::from(a.floor());
        prop_assert!(a.cmp_rat(&fl).is_ge());
        prop_assert!(a.cmp_rat(&(&fl + &Rat::one())).is_lt());
    }

    // Polynomial multiplication is pointwise multiplication.
    #[test]
    fn poly_mul_evaluates_as_product(p in prop::collection::vec(rat(20), 1..5),
                                     q in prop::collection::vec(rat(20), 1..5),
                                     x in rat(20)) {
        let lhs = poly_eval(&poly_mul(&p, &q), &x);
        let rhs = &poly_eval(&p, &x) * &poly_eval(&q, &x);
        prop_assert_eq!(lhs, rhs);
    }

    // The identity check accepts exactly coefficient-wise equality.
    #[test]
    fn poly_identity_check_is_equality(p in prop::collection::vec(rat(20), 1..6),
                                       q in prop::collection::vec(rat(20), 1..6)) {
        let norm = |v: &[Rat]| {
            let mut v = v.to_vec();
            while v.last() == Some(&Rat::zero()) {
                v.pop();
            }
            v
        };
        prop_assert_eq!(poly_identity_check(&p, &q), norm(&p) == norm(&q));
    }

    // Each bound is a threshold predicate: upward closed, with the
    // documented smallest satisfying integer.
    #[test]
    fn holds_is_upward_closed_at_its_threshold(kind_idx in 0_usize..12,
                                               g in 0_u32..=30, r in 1_u32..=8) {
        let kind = BoundKind::ALL[kind_idx];
        let profile = match kind.family() {
            Family::I => GenusProfile::new(g, 0),
            Family::J => GenusProfile::new(g, r),
        };
        let t = threshold(kind, &profile).unwrap();
        let t: i64 = i64::try_from(&t).unwrap();
        prop_assert!(t >= 1);
        prop_assert!(holds(kind, t as u64, &profile).unwrap());
        prop_assert!(!holds(kind, t as u64 - 1, &profile).unwrap());
        prop_assert!(holds(kind, t as u64 + 17, &profile).unwrap());
    }

    // The envelope is the pointwise maximum of its six members.
    #[test]
    fn envelope_dominates_and_is_attained(g in 0_u32..=60, r in 0_u32..=8) {
        let (family, profile) = if r == 0 {
            (Family::I, GenusProfile::new(g, 0))
        } else {
            (Family::J, GenusProfile::new(g, r))
        };
        let env = envelope(&profile, family).unwrap();
        let mut attained = false;
        for kind in family.members() {
            let v = eval_bound(kind, &profile).unwrap();
            prop_assert!(v <= env);
            attained |= v == env;
        }
        prop_assert!(attained);
    }

    // For r = 3 the triple rule is "the minimum is attained twice"; the
    // constructor must accept exactly those tables.
    #[test]
    fn tangency_constructor_matches_triple_rule_oracle(a in 0_u64..=6, b in 0_u64..=6,
                                                       c in 0_u64..=6) {
        let min = a.min(b).min(c);
        let hits = [a, b, c].iter().filter(|&&v| v == min).count();
        prop_assert_eq!(TangencyTable::new(3, vec![a, b, c]).is_ok(), hits >= 2);
    }

    // Any valid composition satisfies the delta-codimension inequality,
    // not just the extremal ones the acceptance sweep pins.
    #[test]
    fn composed_points_satisfy_the_delta_inequality(
        shapes in prop::collection::vec((1_u64..=4, 0_i64..=5, 0_u64..=20), 2..=4),
        level in 0_u64..=4,
        eps_frac in prop::collection::vec(0_u64..=100, 6),
    ) {
        let branches: Vec<BranchModel> = shapes
            .iter()
            .map(|&(m, e_off, td_raw)| {
                let e = m as i64 - 2 + e_off;
                let cap = m * (e - (m as i64 - 2)) as u64;
                BranchModel::new(m, e, td_raw.min(cap)).unwrap()
            })
            .collect();
        let r = branches.len();
        let table = TangencyTable::constant(r, level);
        let mut eps = Vec::new();
        let mut k = 0;
        for i in 0..r {
            for j in i + 1..r {
                let cap = (branches[i].m() * (branches[j].y_codim() + level + 1))
                    .min(branches[j].m() * (branches[i].y_codim() + level + 1));
                eps.push(1 + (eps_frac[k] * (cap - 1)) / 100);
                k += 1;
            }
        }
        let pt = compose_multibranch(&branches, &table, &eps).unwrap();
        prop_assert_eq!(brn_check(&pt), Some(true));
    }

    // Composing n transverse smooth branches is the ordinary n-fold point.
    #[test]
    fn transverse_smooth_composition_is_the_ordinary_point(n in 2_usize..=40) {
        let branches = vec![BranchModel::smooth(); n];
        let table = TangencyTable::constant(n, 0);
        let eps = vec![1_u64; n * (n - 1) / 2];
        let pt = compose_multibranch(&branches, &table, &eps).unwrap();
        let ordinary = ordinary_point(n as u64);
        prop_assert_eq!(pt.m(), ordinary.m());
        prop_assert_eq!(pt.r(), ordinary.r());
        prop_assert_eq!(pt.ext_nu(), ordinary.ext_nu());
        prop_assert_eq!(pt.two_delta(), ordinary.two_delta());
    }

    // The exchange term stays positive on the certified window.
    #[test]
    fn exchange_term_positive_on_ordered_triples(x in 2_i64..=58, dy in 1_i64..=20,
                                                 dz in 1_i64..=20) {
        let y = (x + dy).min(59);
        let z = (y + dz).min(60);
        prop_assume!(x < y && y < z);
        prop_assert!(exchange_term(x, y, z) > 0);
    }

    // Exact values round-trip through their JSON forms unchanged.
    #[test]
    fn exact_values_round_trip_through_json(x in rat(9999), s in surd()) {
        let x2: Rat = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(x, x2);
        let s2: Surd = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        prop_assert_eq!(s, s2);
    }

    // Chain traces round-trip through JSON with every step intact.
    #[test]
    fn chain_traces_round_trip_through_json(g in 0_i64..=3, n in 1_i64..=30) {
        let trace = thm1_finite_chain(&ChainParams::new(g, 0, n)).unwrap();
        let back: ChainTrace =
            serde_json::from_str(&serde_json::to_string(&trace).unwrap()).unwrap();
        prop_assert_eq!(trace, back);
    }
}
