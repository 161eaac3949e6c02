//! Integer polynomials, lowest degree first.

pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Quotient of `num` by a monic `den`; panics if the division is not exact.
fn div_exact(num: &[i64], den: &[i64]) -> Poly {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        assert!(rem.iter().all(|&c| c == 0), "inexact division");
        return vec![0];
    }
    let mut quot = vec![0; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact division");
    trim(quot)
}

/// `Φ_n`, by dividing `x^n - 1` by `Φ_e` for every proper divisor `e`.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1);
    let mut p = vec![0; n + 1];
    p[0] = -1;
    p[n] = 1;
    for e in (1..n).filter(|e| n.is_multiple_of(*e)) {
        p = div_exact(&p, &cyclotomic(e));
    }
    p
}

/// Remainder of `p` modulo a monic `m`.
pub fn reduce(p: &[i64], m: &[i64]) -> Poly {
    let dm = m.len() - 1;
    let mut r = p.to_vec();
    for i in (dm..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for (j, &d) in m.iter().enumerate() {
                r[i - dm + j] -= c * d;
            }
        }
    }
    r.truncate(dm.max(1));
    r.resize(dm.max(1), 0);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        // x^6 - x^3 + 1
        assert_eq!(cyclotomic(18), vec![1, 0, 0, -1, 0, 0, 1]);
    }

    #[test]
    fn degree_is_totient() {
        let phi = |n: usize| (1..=n).filter(|k| gcd(*k, n) == 1).count();
        for n in [1, 2, 3, 5, 8, 12, 18, 20, 36, 45, 72, 90, 120, 180, 360] {
            assert_eq!(cyclotomic(n).len() - 1, phi(n), "n = {n}");
        }
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn x_to_the_n_vanishes() {
        for n in [3, 18, 20, 360] {
            let m = cyclotomic(n);
            let mut xn = vec![0; n + 1];
            xn[0] = -1;
            xn[n] = 1;
            assert!(reduce(&xn, &m).iter().all(|&c| c == 0));
        }
    }
}
