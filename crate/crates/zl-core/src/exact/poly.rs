//! Dense univariate polynomials over the rationals, coefficients in
//! ascending degree order. Enough for certificate algebra: evaluation,
//! ring operations, and exact identity checking.

use super::Rat;

/// Evaluates `p` at `x` by Horner's rule, exactly.
pub fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Whether `p` and `q` are identical as polynomials.
///
/// Compares values at the `d + 1` integer points `0..=d` where `d` is the
/// larger degree bound; two polynomials of degree at most `d` agreeing on
/// `d + 1` points are equal coefficientwise.
pub fn poly_identity_check(p: &[Rat], q: &[Rat]) -> bool {
    let d = p.len().max(q.len()).saturating_sub(1);
    (0..=d as i64).all(|x| {
        let x = Rat::int(x);
        poly_eval(p, &x) == poly_eval(q, &x)
    })
}

pub fn poly_mul(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + a * b;
        }
    }
    out
}

pub fn poly_sub(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = p.to_vec();
    if out.len() < q.len() {
        out.resize(q.len(), Rat::zero());
    }
    for (i, b) in q.iter().enumerate() {
        out[i] = &out[i] - b;
    }
    out
}

pub fn poly_scale(p: &[Rat], k: &Rat) -> Vec<Rat> {
    p.iter().map(|c| c * k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Vec<Rat> {
        coeffs.iter().map(|&c| Rat::int(c)).collect()
    }

    #[test]
    fn horner_evaluation_is_exact() {
        // 3 - 2x + x^2 at x = 5/2: 3 - 5 + 25/4 = 17/4.
        let q = p(&[3, -2, 1]);
        assert_eq!(poly_eval(&q, &Rat::new(5, 2)), Rat::new(17, 4));
        assert_eq!(poly_eval(&[], &Rat::int(7)), Rat::zero());
    }

    #[test]
    fn identity_check_ignores_trailing_zeros() {
        let a = p(&[1, 2, 3]);
        let mut b = p(&[1, 2, 3]);
        b.push(Rat::zero());
        assert!(poly_identity_check(&a, &b));
        b[3] = Rat::new(1, 1000000);
        assert!(!poly_identity_check(&a, &b));
        assert!(poly_identity_check(&[], &[Rat::zero()]));
    }

    #[test]
    fn ring_operations() {
        // (1 + x)(1 - x) = 1 - x^2
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[1, -1])), p(&[1, 0, -1]));
        assert_eq!(poly_sub(&p(&[1, 1]), &p(&[1, 0, -1])), p(&[0, 1, 1]));
        assert_eq!(poly_scale(&p(&[2, -4]), &Rat::new(1, 2)), p(&[1, -2]));
        assert!(poly_mul(&[], &p(&[1])).is_empty());
    }

    #[test]
    fn square_expansion_identity() {
        // (x - 3/2)^2 - 5 = x^2 - 3x - 11/4
        let shift = [Rat::new(-3, 2), Rat::one()];
        let lhs = poly_sub(&poly_mul(&shift, &shift), &[Rat::int(5)]);
        let rhs = [Rat::new(-11, 4), Rat::int(-3), Rat::one()];
        assert!(poly_identity_check(&lhs, &rhs));
    }
}
