//! Alexander polynomial of `b(p,q)` from a Seifert matrix.
//!
//! Independent of the `ν(i)` summation in the parent module: the knot is
//! written as a plumbing of twisted bands read off an all-even continued
//! fraction of `p/q'` (`q' = q mod p`, chosen even), and `Δ = det(V - tVᵀ)`
//! is computed by fraction-free elimination over `Z[t]`.

use super::{IntPolynomial, TwoBridgeFraction};

/// Continued fraction `p/q = [c_1, ..., c_m]` with every `c_i` even.
/// Requires `p` odd and `q` even (possibly negative or zero).
pub fn even_continued_fraction(p: i64, q: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let (mut a, mut b) = (p, q);
    while b != 0 {
        // even c with |a - c b| < |b|
        let mut c = 2 * (a.div_euclid(2 * b.abs()) * b.signum());
        if (a - c * b).abs() >= b.abs() {
            c += 2 * b.signum() * (a - c * b).signum();
        }
        out.push(c);
        let r = a - c * b;
        a = b;
        b = r;
    }
    out
}

/// Seifert matrix of the band plumbing: diagonal `(c_i / 2)(-1)^i`,
/// superdiagonal 1.
pub fn seifert_matrix(f: TwoBridgeFraction) -> Vec<Vec<i64>> {
    let p = f.p() as i64;
    let mut qe = (f.q() as i64).rem_euclid(p);
    if qe % 2 != 0 {
        qe -= p;
    }
    let cf = even_continued_fraction(p, qe);
    let m = cf.len();
    let mut v = vec![vec![0i64; m]; m];
    for (i, c) in cf.iter().enumerate() {
        v[i][i] = if i % 2 == 0 { c / 2 } else { -c / 2 };
        if i + 1 < m {
            v[i][i + 1] = 1;
        }
    }
    v
}

/// Determinant over `Z[t]` by Bareiss elimination.
pub fn polynomial_determinant(mut m: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::constant(1);
    }
    let mut negate = false;
    let mut prev = IntPolynomial::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = IntPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// `det(V - tVᵀ)` in unit-normal form.
pub fn alexander_from_seifert(f: TwoBridgeFraction) -> IntPolynomial {
    let v = seifert_matrix(f);
    let n = v.len();
    let t = IntPolynomial::variable();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = IntPolynomial::constant(i128::from(v[i][j]));
                    let b = &t * &IntPolynomial::constant(i128::from(v[j][i]));
                    &a - &b
                })
                .collect()
        })
        .collect();
    polynomial_determinant(entries).normalized()
}
