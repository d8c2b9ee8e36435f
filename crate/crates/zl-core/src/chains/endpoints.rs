//! Square-completion identities tying each chain endpoint to a bound.
//!
//! Every chain ends in a closed-form gap that is quadratic in the node
//! count, and each of those endpoints certifies one member of the bound
//! family: the endpoint must equal `scale * ((N - L)^2 - S)` where `L` and
//! `S` are the linear part and radicand stored in the bound's coefficient
//! table. Once that identity is certified, a sign evaluation of the
//! endpoint is a statement about the bound itself: for `N >= L` the gap is
//! positive exactly when `N` exceeds `L + sqrt(S)`, which is the strict
//! form [`holds`] decides by surd comparison. Below `L` the square loses
//! the direction of the root, so the agreement grid starts at `N >= L`.
//!
//! The identity is certified once per pairing by [`poly_identity_check`]
//! on the polynomials in `N`, over a parameter grid wide enough to pin the
//! coefficients: both sides have degree at most two in `g` and in `R`, so
//! agreement of the `N`-polynomials on a 3 x 3 grid of `(g, R)` values
//! settles the identity for every parameter choice.

use serde::{Deserialize, Serialize};

use super::formulas;
use crate::bounds::{holds, BoundKind, Family, GenusProfile};
use crate::exact::{poly_identity_check, poly_mul, poly_scale, Rat};

/// One endpoint/bound pairing: the certified identity plus the result of
/// replaying the sign agreement on an integer grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EndpointIdentity {
    /// Chain the endpoint closes, named as in precondition errors.
    pub chain: String,
    /// Trace label of the endpoint step.
    pub endpoint: String,
    /// Bound kind the endpoint certifies.
    pub bound: BoundKind,
    /// Positive factor between the endpoint and the completed square.
    pub scale: Rat,
    /// Whether the completed-square identity holds coefficientwise.
    pub identity_ok: bool,
    /// Integer points `(g, R, N)` with `N >= L` where signs were compared.
    pub grid_points: usize,
    /// Points where the endpoint sign and the bound predicate disagreed.
    pub disagreements: usize,
}

impl EndpointIdentity {
    pub fn ok(&self) -> bool {
        self.identity_ok && self.disagreements == 0
    }
}

/// Results for all six endpoint/bound pairings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EndpointReport {
    pub identities: Vec<EndpointIdentity>,
}

impl EndpointReport {
    pub fn ok(&self) -> bool {
        self.identities.iter().all(EndpointIdentity::ok)
    }

    pub fn total_grid_points(&self) -> usize {
        self.identities.iter().map(|i| i.grid_points).sum()
    }
}

type Gap = fn(&Rat, &Rat, &Rat) -> Rat;

struct Pairing {
    chain: &'static str,
    endpoint: &'static str,
    bound: BoundKind,
    scale: (i64, i64),
    gap: Gap,
}

fn gap_fin1(g: &Rat, _r: &Rat, n: &Rat) -> Rat {
    formulas::fin1_gap_closed(g, n)
}

fn gap_inf1_three(g: &Rat, _r: &Rat, n: &Rat) -> Rat {
    formulas::inf1_gap_closed3(g, n)
}

fn gap_inf1_half(g: &Rat, _r: &Rat, n: &Rat) -> Rat {
    formulas::inf1_gap_closed_half(g, n)
}

fn gap_fin2(g: &Rat, r: &Rat, n: &Rat) -> Rat {
    formulas::fin2_gap_closed(g, r, n)
}

fn gap_inf2_three(g: &Rat, r: &Rat, n: &Rat) -> Rat {
    formulas::inf2_gap_closed3(g, r, n)
}

fn gap_inf2_half(g: &Rat, r: &Rat, n: &Rat) -> Rat {
    formulas::inf2_gap_closed_half(g, r, n)
}

/// The half-track endpoints keep the `7/6` prefactor of their chain step;
/// the others already sit at scale one.
const PAIRINGS: [Pairing; 6] = [
    Pairing {
        chain: "thm1-finite",
        endpoint: "Delta5",
        bound: BoundKind::Ic,
        scale: (1, 1),
        gap: gap_fin1,
    },
    Pairing {
        chain: "thm1-infinity",
        endpoint: "Delta8",
        bound: BoundKind::Id,
        scale: (1, 1),
        gap: gap_inf1_three,
    },
    Pairing {
        chain: "thm1-infinity",
        endpoint: "Delta10",
        bound: BoundKind::If,
        scale: (7, 6),
        gap: gap_inf1_half,
    },
    Pairing {
        chain: "thm2-finite",
        endpoint: "Delta6",
        bound: BoundKind::Jc,
        scale: (1, 1),
        gap: gap_fin2,
    },
    Pairing {
        chain: "thm2-infinity",
        endpoint: "Delta11",
        bound: BoundKind::Jd,
        scale: (1, 1),
        gap: gap_inf2_three,
    },
    Pairing {
        chain: "thm2-infinity",
        endpoint: "Delta13",
        bound: BoundKind::Jf,
        scale: (7, 6),
        gap: gap_inf2_half,
    },
];

/// Monomial coefficients of the unique degree `< vals.len()` polynomial
/// through `(0, vals[0]), (1, vals[1]), ...`, by Newton's differences.
fn interp_coeffs(vals: &[Rat]) -> Vec<Rat> {
    let mut diffs: Vec<Rat> = vals.to_vec();
    for level in 1..vals.len() {
        for i in (level..vals.len()).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / Rat::int(level as i64);
        }
    }
    let mut coeffs = vec![diffs[vals.len() - 1].clone()];
    for i in (0..vals.len() - 1).rev() {
        coeffs = poly_mul(&coeffs, &[Rat::int(-(i as i64)), Rat::one()]);
        coeffs[0] = &coeffs[0] + &diffs[i];
    }
    coeffs
}

/// Linear part and radicand of the bound at the given parameters.
fn linear_and_radicand(kind: BoundKind, g: &Rat, r: &Rat) -> (Rat, Rat) {
    let def = kind.def();
    let l = &def.linear[0] * g + &def.linear[1] * r + &def.linear[2];
    let s = &def.radicand[0] * g.square()
        + &def.radicand[1] * g * r
        + &def.radicand[2] * r.square()
        + &def.radicand[3] * g
        + &def.radicand[4] * r
        + &def.radicand[5];
    (l, s)
}

/// Certifies `gap(g, R, N) = scale * ((N - L)^2 - S)` as polynomials in
/// `N`, at each point of the parameter grid.
///
/// The gap is fitted at five nodes so a stray cubic or quartic term in `N`
/// would surface as a mismatch rather than alias into the square.
fn certify(pairing: &Pairing, scale: &Rat) -> bool {
    for g in 0..3i64 {
        for r in 1..4i64 {
            let (gq, rq) = (Rat::int(g), Rat::int(r));
            let vals: Vec<Rat> = (0..5)
                .map(|n| (pairing.gap)(&gq, &rq, &Rat::int(n)))
                .collect();
            let gap_poly = interp_coeffs(&vals);
            let (l, s) = linear_and_radicand(pairing.bound, &gq, &rq);
            let square = [&l * &l - &s, -(&l + &l), Rat::one()];
            if !poly_identity_check(&gap_poly, &poly_scale(&square, scale)) {
                return false;
            }
        }
    }
    true
}

/// Compares the endpoint sign against the bound predicate at every integer
/// `(g, R, N)` in the agreement regime `N >= L`, `N <= 30`.
fn sign_grid(pairing: &Pairing, scale: &Rat) -> (usize, usize) {
    debug_assert!(scale.is_positive());
    let (g_max, r_lo, r_hi) = match pairing.bound.family() {
        Family::I => (9u32, 0u32, 0u32),
        Family::J => (4, 1, 4),
    };
    let mut points = 0;
    let mut disagreements = 0;
    for g in 0..=g_max {
        for r in r_lo..=r_hi {
            let profile = GenusProfile::new(g, r);
            let (gq, rq) = (Rat::from(u64::from(g)), Rat::from(u64::from(r)));
            let (l, _) = linear_and_radicand(pairing.bound, &gq, &rq);
            for n in 1..=30u64 {
                let nq = Rat::from(n);
                if nq < l {
                    continue;
                }
                points += 1;
                let positive = (pairing.gap)(&gq, &rq, &nq).is_positive();
                let expected = holds(pairing.bound, n, &profile).expect("profile matches family");
                if positive != expected {
                    disagreements += 1;
                }
            }
        }
    }
    (points, disagreements)
}

/// Certifies all six endpoint/bound identities and replays the sign
/// agreement grids. The whole run is a few thousand exact evaluations.
pub fn check_endpoint_identities() -> EndpointReport {
    let identities = PAIRINGS
        .iter()
        .map(|pairing| {
            let scale = Rat::new(pairing.scale.0, pairing.scale.1);
            let identity_ok = certify(pairing, &scale);
            let (grid_points, disagreements) = sign_grid(pairing, &scale);
            EndpointIdentity {
                chain: pairing.chain.to_string(),
                endpoint: pairing.endpoint.to_string(),
                bound: pairing.bound,
                scale,
                identity_ok,
                grid_points,
                disagreements,
            }
        })
        .collect();
    EndpointReport { identities }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_monomial_coefficients() {
        // (x - 3/2)^2 - 5 = x^2 - 3x - 11/4 from its values at 0..=4.
        let f = |x: i64| {
            let x = Rat::int(x);
            (&x - &Rat::new(3, 2)).square() - Rat::int(5)
        };
        let vals: Vec<Rat> = (0..5).map(f).collect();
        let coeffs = interp_coeffs(&vals);
        assert!(poly_identity_check(
            &coeffs,
            &[Rat::new(-11, 4), Rat::int(-3), Rat::one()]
        ));
    }

    #[test]
    fn all_six_endpoints_certify_and_agree() {
        let report = check_endpoint_identities();
        assert_eq!(report.identities.len(), 6);
        assert!(report.ok());
        for id in &report.identities {
            assert!(id.identity_ok, "{} vs {}", id.endpoint, id.bound.name());
            assert_eq!(id.disagreements, 0, "{}", id.endpoint);
            assert!(id.grid_points >= 200, "{}: {}", id.endpoint, id.grid_points);
        }
        let endpoints: Vec<&str> = report
            .identities
            .iter()
            .map(|i| i.endpoint.as_str())
            .collect();
        assert_eq!(
            endpoints,
            ["Delta5", "Delta8", "Delta10", "Delta6", "Delta11", "Delta13"]
        );
    }

    #[test]
    fn the_scale_factor_is_load_bearing() {
        let half_track = &PAIRINGS[2];
        assert_eq!(half_track.endpoint, "Delta10");
        assert!(certify(half_track, &Rat::new(7, 6)));
        assert!(!certify(half_track, &Rat::one()));
    }

    #[test]
    fn endpoint_signs_match_the_bound_at_spot_values() {
        // Delta13 at (g, R, N) = (0, 2, 6) is -5/12; N = 6 sits under J_f.
        let (g, r, n) = (Rat::int(0), Rat::int(2), Rat::int(6));
        assert_eq!(
            formulas::inf2_gap_closed_half(&g, &r, &n),
            Rat::new(-5, 12)
        );
        assert!(!holds(BoundKind::Jf, 6, &GenusProfile::new(0, 2)).unwrap());

        // Delta5 at (g, N) = (1, 6) is 4/3; N = 6 clears I_c strictly.
        assert_eq!(formulas::fin1_gap_closed(&Rat::one(), &n), Rat::new(4, 3));
        assert!(holds(BoundKind::Ic, 6, &GenusProfile::new(1, 0)).unwrap());
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = check_endpoint_identities();
        let json = serde_json::to_string(&report).unwrap();
        let back: EndpointReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.identities.len(), 6);
        assert!(back.ok());
        assert!(json.contains("\"bound\":\"I_c\""));
        assert!(json.contains("\"scale\":\"7/6\""));
    }
}
