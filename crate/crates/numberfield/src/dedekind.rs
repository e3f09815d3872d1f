use bigmath::is_prime_u64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use polyring::{Fp, Poly, PolyRing};
use serde::Serialize;

use crate::NfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DedekindVerdict {
    Ramified,
    Unramified,
    /// Z[α] is not p-maximal, so the test says nothing.
    Indeterminate,
}

/// Squarefree radical over F_p, handling factors whose multiplicity is a multiple of p.
fn radical(pr: &PolyRing<Fp>, f: &Poly<u64>) -> Poly<u64> {
    let f = pr.monic(f);
    if f.deg().unwrap_or(0) == 0 {
        return pr.one();
    }
    let p = pr.base().p() as usize;
    let d = pr.derivative(&f);
    if d.is_zero() {
        return radical(pr, &pth_root(pr, &f, p));
    }
    let g = pr.gcd(&f, &d);
    let w = pr.divrem(&f, &g).unwrap().0;
    let mut rest = g;
    loop {
        let y = pr.gcd(&rest, &w);
        if y.deg().unwrap_or(0) == 0 {
            break;
        }
        rest = pr.divrem(&rest, &y).unwrap().0;
    }
    if rest.deg().unwrap_or(0) == 0 {
        return pr.monic(&w);
    }
    pr.monic(&pr.mul(&w, &radical(pr, &pth_root(pr, &rest, p))))
}

fn pth_root(pr: &PolyRing<Fp>, f: &Poly<u64>, p: usize) -> Poly<u64> {
    // Coefficients of F_p are their own p-th roots.
    pr.from_coeffs(f.coeffs().iter().step_by(p).cloned().collect())
}

/// Dedekind's criterion for a monic integral g at the prime p. When Z[α] is
/// p-maximal, p ramifies in Q(α) exactly when g mod p has a repeated factor.
pub fn dedekind_ramified(g: &[BigInt], p: u64) -> Result<DedekindVerdict, NfError> {
    if !is_prime_u64(p) {
        return Err(NfError::Domain(format!("{p} is not prime")));
    }
    if g.len() < 2 || g.last().map(|c| c != &BigInt::from(1)).unwrap_or(true) {
        return Err(NfError::Domain("Dedekind test needs a monic polynomial of positive degree".into()));
    }
    let fp = Fp::new(p).unwrap();
    let pr = PolyRing::new(fp);
    let gbar = pr.from_coeffs(g.iter().map(|c| fp.reduce_bigint(c)).collect());
    let t = radical(&pr, &gbar);
    let h = pr.divrem(&gbar, &t).unwrap().0;
    let zi = |c: &u64| BigInt::from(*c);
    let tz: Vec<BigInt> = t.coeffs().iter().map(zi).collect();
    let hz: Vec<BigInt> = h.coeffs().iter().map(zi).collect();
    let mut th = vec![BigInt::zero(); tz.len() + hz.len() - 1];
    for (i, a) in tz.iter().enumerate() {
        for (j, b) in hz.iter().enumerate() {
            th[i + j] += a * b;
        }
    }
    let pb = BigInt::from(p);
    let fbar = pr.from_coeffs(
        g.iter()
            .zip(th.iter().chain(std::iter::repeat(&BigInt::zero())))
            .map(|(a, b)| {
                let (q, r) = (a - b).div_rem(&pb);
                debug_assert!(r.is_zero());
                q.mod_floor(&pb).to_u64().unwrap()
            })
            .collect(),
    );
    let c = pr.gcd(&pr.gcd(&fbar, &t), &h);
    if c.deg().unwrap_or(0) > 0 {
        return Ok(DedekindVerdict::Indeterminate);
    }
    Ok(if pr.is_squarefree(&gbar) { DedekindVerdict::Unramified } else { DedekindVerdict::Ramified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_ramifies_only_at_p() {
        let phi5 = z(&[1, 1, 1, 1, 1]);
        assert_eq!(dedekind_ramified(&phi5, 5).unwrap(), DedekindVerdict::Ramified);
        for q in [2, 3, 7, 11] {
            assert_eq!(dedekind_ramified(&phi5, q).unwrap(), DedekindVerdict::Unramified);
        }
    }

    #[test]
    fn non_maximal_order_is_indeterminate() {
        // x² + 3 generates Z[√−3], of index 2 in the maximal order.
        assert_eq!(dedekind_ramified(&z(&[3, 0, 1]), 2).unwrap(), DedekindVerdict::Indeterminate);
        assert_eq!(dedekind_ramified(&z(&[3, 0, 1]), 3).unwrap(), DedekindVerdict::Ramified);
        // x² − 5 at 2 is not 2-maximal either.
        assert_eq!(dedekind_ramified(&z(&[-5, 0, 1]), 2).unwrap(), DedekindVerdict::Indeterminate);
        assert_eq!(dedekind_ramified(&z(&[-2, 0, 1]), 2).unwrap(), DedekindVerdict::Ramified);
    }

    #[test]
    fn radical_handles_pth_powers() {
        let pr = PolyRing::new(Fp::new(3).unwrap());
        // (x+1)^3 (x+2)^2 (x)
        let f = pr.mul(&pr.mul(&pr.pow(&pr.from_i64s(&[1, 1]), 3), &pr.pow(&pr.from_i64s(&[2, 1]), 2)), &pr.x());
        let expect = pr.mul(&pr.mul(&pr.from_i64s(&[1, 1]), &pr.from_i64s(&[2, 1])), &pr.x());
        assert_eq!(radical(&pr, &f), expect);
    }
}
