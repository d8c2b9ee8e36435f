//! The closed-form evaluators behind the four estimate chains.
//!
//! Each chain majorizes the codimension energy of a curve degree pair
//! step by step, then minorizes the double-point gap Delta until it depends
//! on nothing but the genus `g`, the branch excess `rr` (the R of the chain
//! labels), and the singular-point count `n`. The functions here are direct
//! transcriptions of those intermediate displays, one function per labeled
//! step, all in exact rational arithmetic.
//!
//! Argument conventions, used consistently:
//! - `g` genus, `n` number of singular points, `rr` total branch excess,
//! - `p < q` the degree pair of the pencil, `pp` the branch multiplicity
//!   at the place at infinity,
//! - `r`, `s` the counts of double-multiplicity and triple-multiplicity
//!   unibranched points, `m1` the multiplicity of the distinguished point,
//! - `a` the branch count cap A, `b` the branch count of the distinguished
//!   point, `t2mt1` the ordinary-point tally difference T2 - T1.
//!
//! Suffix conventions: `_qmin` substitutes the minimal admissible `q`,
//! `_qmin3` additionally pins `pp = 3`, `_half` pins `pp = p/2`, `_closed`
//! substitutes the minimal admissible `p` to reach the final two-variable
//! (or three-variable) form whose sign the theorems read off.

use crate::exact::Rat;
use num_integer::Integer;

fn int(n: i64) -> Rat {
    Rat::int(n)
}

fn frac(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Number of double points of a generic member of the pencil: the budget
/// every energy estimate is measured against.
pub fn double_point_count(p: i64, q: i64, g: i64) -> Rat {
    int((p - 1) * (q - 1) - p.gcd(&q) + 1 - 2 * g)
}

/// Lower bound for [`double_point_count`] using gcd(p, q) <= q - p, valid
/// whenever p does not divide q. Polynomial in (p, q), so the chains can
/// substitute boundary values for q and p.
pub fn double_point_floor(g: &Rat, p: &Rat, q: &Rat) -> Rat {
    (p - int(1)) * (q - int(1)) - (q - p) + int(1) - int(2) * g
}

// ---- unibranched curves, finite-distance point dominating ----

/// Energy with the distinguished point's external codimension pushed to its
/// ceiling; `m1` and `s` still free.
pub fn fin1_energy(g: &Rat, n: &Rat, p: &Rat, q: &Rat, m1: &Rat, s: &Rat) -> Rat {
    let r = n - int(1) - s;
    let ext1 = p + q + int(4) * g - frac(5, 2) - frac(11, 6) * &r - frac(7, 2) * s;
    m1 * (ext1 - m1 + int(2)) + int(2) * &r + int(6) * s
}

/// [`fin1_energy`] with `m1` pushed to its multiplicity ceiling
/// `p + 2g - r - 2s`.
pub fn fin1_energy_m1cap(g: &Rat, n: &Rat, p: &Rat, q: &Rat, s: &Rat) -> Rat {
    let r = n - int(1) - s;
    let m1 = p + int(2) * g - &r - int(2) * s;
    int(2) * &r + int(6) * s + m1 * (q + int(2) * g - frac(5, 6) * &r - frac(3, 2) * s - frac(1, 2))
}

/// [`fin1_energy_m1cap`] at s = 0, the maximizing choice: depends only on
/// (g, n, p, q).
pub fn fin1_energy_closed(g: &Rat, n: &Rat, p: &Rat, q: &Rat) -> Rat {
    int(2) * n - int(2) + (p + int(2) * g - n + int(1)) * (q + int(2) * g - frac(5, 6) * n + frac(1, 3))
}

/// Gap against the floored budget, still polynomial in (p, q).
pub fn fin1_gap(g: &Rat, n: &Rat, p: &Rat, q: &Rat) -> Rat {
    double_point_floor(g, p, q) - fin1_energy_closed(g, n, p, q)
}

/// [`fin1_gap`] at the minimal admissible q = p + 1.
pub fn fin1_gap_qmin(g: &Rat, n: &Rat, p: &Rat) -> Rat {
    fin1_gap(g, n, p, &(p + int(1)))
}

/// [`fin1_gap_qmin`] at the minimal admissible p = n + 1 - 2g, as a
/// completed square: `(n - 2g - 2/3)^2 - (20g/3 + 28/9)`.
pub fn fin1_gap_closed(g: &Rat, n: &Rat) -> Rat {
    (n - int(2) * g - frac(2, 3)).square() - (frac(20, 3) * g + frac(28, 9))
}

// ---- unibranched curves, place at infinity dominating ----

/// Energy when the infinity term `pp * nu'` dominates; `s` still free.
pub fn inf1_energy(g: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat, s: &Rat) -> Rat {
    int(2) * n + int(4) * s + pp * (p + q + int(4) * g - frac(11, 6) * n - frac(5, 3) * s - int(2))
}

/// [`inf1_energy`] at s = 0, the maximizing choice.
pub fn inf1_energy_closed(g: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat) -> Rat {
    int(2) * n + pp * (p + q + int(4) * g - frac(11, 6) * n - int(2))
}

/// Gap against the budget with gcd(p, q) replaced by the free multiplicity
/// `pp`, polynomial in (p, q, pp).
pub fn inf1_gap(g: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat) -> Rat {
    (p - int(1)) * (q - int(1)) - pp + int(1) - int(2) * g - inf1_energy_closed(g, n, p, q, pp)
}

/// [`inf1_gap`] at the minimal admissible q = p + pp.
pub fn inf1_gap_qmin(g: &Rat, n: &Rat, p: &Rat, pp: &Rat) -> Rat {
    inf1_gap(g, n, p, &(p + pp), pp)
}

/// [`inf1_gap_qmin`] at the concavity endpoint pp = 3.
pub fn inf1_gap_qmin3(g: &Rat, n: &Rat, p: &Rat) -> Rat {
    p.square() - int(5) * p - int(14) * g + frac(7, 2) * n - int(7)
}

/// [`inf1_gap_qmin3`] at the minimal admissible p = n + 1 - 2g:
/// `(n - 2g + 1/4)^2 - 7g - 177/16`.
pub fn inf1_gap_closed3(g: &Rat, n: &Rat) -> Rat {
    (n - int(2) * g + frac(1, 4)).square() - int(7) * g - frac(177, 16)
}

/// [`inf1_gap_qmin`] at the concavity endpoint pp = p/2, exact for odd p.
pub fn inf1_gap_half(g: &Rat, n: &Rat, p: &Rat) -> Rat {
    p.square() / int(4) - p * (int(2) * g - frac(11, 12) * n + int(2)) - int(2) * g - int(2) * n + int(2)
}

/// [`inf1_gap_half`] at the minimal admissible p = n + 1 - 2g.
pub fn inf1_gap_closed_half(g: &Rat, n: &Rat) -> Rat {
    frac(7, 6)
        * (n.square() - (frac(29, 7) * g + frac(31, 14)) * n + frac(30, 7) * g.square()
            - frac(6, 7) * g
            + frac(3, 14))
}

// ---- multibranched curves, finite-distance point dominating ----

/// Energy with the distinguished point's external codimension at its
/// ceiling and `m1` at its multiplicity ceiling `p + 2g - 1 + b - r - 2s`;
/// the ordinary-point decorations enter through `t2mt1`.
pub fn fin2_energy(
    g: &Rat,
    n: &Rat,
    p: &Rat,
    q: &Rat,
    r: &Rat,
    s: &Rat,
    b: &Rat,
    t2mt1: &Rat,
) -> Rat {
    let m1 = p + int(2) * g - int(1) + b - r - int(2) * s;
    m1 * (q + int(2) * g + b - frac(11, 6) * r - frac(5, 2) * s + n - int(2))
        + int(2) * r
        + int(6) * s
        + t2mt1
}

/// [`fin2_energy`] at s = 0 with the distinguished branch count pushed to
/// the cap `b = a`.
pub fn fin2_energy_s0(g: &Rat, n: &Rat, p: &Rat, q: &Rat, r: &Rat, a: &Rat, t2mt1: &Rat) -> Rat {
    (p + int(2) * g - int(1) + a - r) * (q + int(2) * g + a - frac(11, 6) * r + n - int(2))
        + int(2) * r
        + t2mt1
}

/// [`fin2_energy_s0`] with the ordinary-point tallies eliminated through
/// the exchange argument: only points of 2 and `a` branches survive, giving
/// `t2mt1 = a(rr - n + r + 1) + (rr + n + r) - a^2 - 2r`.
pub fn fin2_energy_ktab(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat, r: &Rat, a: &Rat) -> Rat {
    (p + int(2) * g + a - r - int(1)) * (q + int(2) * g + a + n - frac(11, 6) * r - int(2))
        + a * (rr - n + r + int(1))
        + (rr + n + r)
        - a.square()
}

/// [`fin2_energy_ktab`] at the minimal admissible r = n + a - rr - 2.
pub fn fin2_energy_rmin(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat, a: &Rat) -> Rat {
    (p + int(2) * g + int(1) + rr - n)
        * (q + int(2) * g + frac(11, 6) * rr - frac(5, 6) * a - frac(5, 6) * n + frac(5, 3))
        + int(2) * n
        - int(2)
}

/// [`fin2_energy_rmin`] at the minimal branch cap a = 2: depends only on
/// (g, rr, n, p, q).
pub fn fin2_energy_closed(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat) -> Rat {
    (p + int(2) * g + int(1) + rr - n) * (q + int(2) * g + frac(11, 6) * rr - frac(5, 6) * n)
        + int(2) * n
        - int(2)
}

/// Gap against the floored budget, polynomial in (p, q).
pub fn fin2_gap(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat) -> Rat {
    double_point_floor(g, p, q) - fin2_energy_closed(g, rr, n, p, q)
}

/// [`fin2_gap`] at the minimal admissible q = p + 1.
pub fn fin2_gap_qmin(g: &Rat, rr: &Rat, n: &Rat, p: &Rat) -> Rat {
    fin2_gap(g, rr, n, p, &(p + int(1)))
}

/// [`fin2_gap_qmin`] at the minimal admissible p = n - rr - 2g + 1:
/// `(n - 2g - rr - 2/3)^2 - (20g/3 + 4rr + 22/9)`.
pub fn fin2_gap_closed(g: &Rat, rr: &Rat, n: &Rat) -> Rat {
    (n - int(2) * g - rr - frac(2, 3)).square()
        - (frac(20, 3) * g + int(4) * rr + frac(22, 9))
}

// ---- multibranched curves, place at infinity dominating ----

/// Energy when the infinity term dominates, at s = 0; the ordinary-point
/// decorations enter through `t2mt1`.
pub fn inf2_energy(g: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat, r: &Rat, t2mt1: &Rat) -> Rat {
    int(2) * r + t2mt1 + pp * (p + q - int(2) + int(4) * g - frac(17, 6) * r + n)
}

/// [`inf2_energy`] with the tallies eliminated through the exchange
/// argument: `t2mt1 = (a+1)rr + (1-a)n + (a-1)r`.
pub fn inf2_energy_acap(
    g: &Rat,
    rr: &Rat,
    n: &Rat,
    p: &Rat,
    q: &Rat,
    pp: &Rat,
    r: &Rat,
    a: &Rat,
) -> Rat {
    a * (rr - n + r) + rr + n + r + pp * (p + q - int(2) + int(4) * g - frac(17, 6) * r + n)
}

/// [`inf2_energy_acap`] at a = 2 and the forced r = n - rr: depends only
/// on (g, rr, n, p, q, pp).
pub fn inf2_energy_closed(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat) -> Rat {
    int(2) * n + pp * (p + q - int(2) + int(4) * g + frac(17, 6) * rr - frac(11, 6) * n)
}

/// Gap against the budget with gcd(p, q) replaced by the free `pp`.
pub fn inf2_gap(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, q: &Rat, pp: &Rat) -> Rat {
    (p - int(1)) * (q - int(1)) - pp + int(1) - int(2) * g
        - inf2_energy_closed(g, rr, n, p, q, pp)
}

/// [`inf2_gap`] at the minimal admissible q = p + pp.
pub fn inf2_gap_qmin(g: &Rat, rr: &Rat, n: &Rat, p: &Rat, pp: &Rat) -> Rat {
    inf2_gap(g, rr, n, p, &(p + pp), pp)
}

/// [`inf2_gap_qmin`] at the concavity endpoint pp = 3.
pub fn inf2_gap_qmin3(g: &Rat, rr: &Rat, n: &Rat, p: &Rat) -> Rat {
    p.square() - int(5) * p - int(14) * g - frac(17, 2) * rr + frac(7, 2) * n - int(7)
}

/// [`inf2_gap_qmin3`] at the minimal admissible p = n - rr - 2g + 1:
/// `(n - 2g - rr + 1/4)^2 - 7g - 5rr - 177/16`.
pub fn inf2_gap_closed3(g: &Rat, rr: &Rat, n: &Rat) -> Rat {
    (n - int(2) * g - rr + frac(1, 4)).square() - int(7) * g - int(5) * rr - frac(177, 16)
}

/// [`inf2_gap_qmin`] at the concavity endpoint pp = p/2, exact for odd p.
pub fn inf2_gap_half(g: &Rat, rr: &Rat, n: &Rat, p: &Rat) -> Rat {
    p.square() / int(4)
        + p * (frac(11, 12) * n - int(2) * g - frac(17, 12) * rr - int(2))
        - int(2) * g
        - int(2) * n
        + int(2)
}

/// [`inf2_gap_half`] at the minimal admissible p = n - rr - 2g + 1, as a
/// completed square scaled by 7/6.
pub fn inf2_gap_closed_half(g: &Rat, rr: &Rat, n: &Rat) -> Rat {
    let center = n - frac(29, 14) * g - frac(17, 14) * rr - frac(31, 28);
    let radicand = (frac(1, 14) * g + frac(3, 14) * rr).square()
        + frac(1067, 196) * g
        + frac(513, 196) * rr
        + frac(793, 784);
    frac(7, 6) * (center.square() - radicand)
}
