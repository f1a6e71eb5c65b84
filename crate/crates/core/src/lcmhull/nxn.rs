use num_integer::Integer;

use super::{Lcm, RightLcmMonoid};
use crate::{Error, Result};

/// `ℕ ⋊ ℕ^×`: pairs `(m, p)` with `p ≥ 1` and `(m,p)(n,q) = (m + pn, pq)`.
///
/// `(m,p)P = {(a,b) : a ≥ m, a ≡ m mod p, p | b}`, so two ideals meet iff the
/// congruences are compatible, and then in the ideal of the least common
/// solution with modulus `lcm(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NRtimesNx;

impl RightLcmMonoid for NRtimesNx {
    type Elem = (u64, u64);

    fn identity(&self) -> (u64, u64) {
        (0, 1)
    }

    fn multiply(&self, &(m, p): &(u64, u64), &(n, q): &(u64, u64)) -> (u64, u64) {
        (m + p * n, p * q)
    }

    fn grade(&self, &(m, p): &(u64, u64)) -> usize {
        (m + p - 1) as usize
    }

    fn enumerate(&self, depth: usize) -> Vec<(u64, u64)> {
        let d = depth as u64;
        let mut out: Vec<_> = (1..=d + 1).flat_map(|p| (0..=d + 1 - p).map(move |m| (m, p))).collect();
        out.sort_by_key(|x| (self.grade(x), *x));
        out
    }

    fn right_lcm(&self, &(m, p): &(u64, u64), &(n, q): &(u64, u64)) -> Lcm<(u64, u64)> {
        if (m % p.gcd(&q)) != (n % p.gcd(&q)) {
            return Lcm::Disjoint;
        }
        let l = p.lcm(&q);
        let lo = m.max(n);
        // A solution exists in every window of length lcm(p,q).
        let a = (lo..lo + l)
            .find(|a| a % p == m % p && a % q == n % q)
            .expect("compatible congruences have a solution in each period");
        Lcm::Common((a, l))
    }

    fn left_divide(&self, &(m, p): &(u64, u64), &(a, b): &(u64, u64)) -> Option<(u64, u64)> {
        if a < m || (a - m) % p != 0 || b % p != 0 {
            return None;
        }
        Some(((a - m) / p, b / p))
    }

    fn show(&self, &(m, p): &(u64, u64)) -> String {
        format!("({m},{p})")
    }

    fn parse(&self, s: &str) -> Result<(u64, u64)> {
        let bad = || Error::Parse(format!("expected (m,p) with p >= 1, got {s:?}"));
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (m, p) = t.split_once(',').ok_or_else(bad)?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        if p == 0 {
            return Err(bad());
        }
        Ok((m, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_examples() {
        let m = NRtimesNx;
        assert_eq!(m.right_lcm(&(0, 2), &(1, 2)), Lcm::Disjoint);
        assert_eq!(m.right_lcm(&(0, 2), &(1, 3)), Lcm::Common((4, 6)));
        assert_eq!(m.right_lcm(&(1, 1), &(0, 2)), Lcm::Common((2, 2)));
        assert_eq!(m.left_divide(&(1, 3), &(4, 6)), Some((1, 2)));
        assert_eq!(m.multiply(&(1, 3), &(1, 2)), (4, 6));
        assert_eq!(m.enumerate(1), vec![(0, 1), (0, 2), (1, 1)]);
    }
}
