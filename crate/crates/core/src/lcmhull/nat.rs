use super::{FoundationVerdict, Lcm, RightLcmMonoid};
use crate::{Error, Result};

/// `ℕ^k` under addition. Ideals are up-sets, so any two meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatPow {
    k: usize,
}

impl NatPow {
    pub fn new(k: usize) -> Self {
        NatPow { k }
    }

    pub fn rank(&self) -> usize {
        self.k
    }
}

impl RightLcmMonoid for NatPow {
    type Elem = Vec<u64>;

    fn identity(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    fn multiply(&self, p: &Vec<u64>, q: &Vec<u64>) -> Vec<u64> {
        p.iter().zip(q).map(|(a, b)| a + b).collect()
    }

    fn grade(&self, p: &Vec<u64>) -> usize {
        p.iter().sum::<u64>() as usize
    }

    fn enumerate(&self, depth: usize) -> Vec<Vec<u64>> {
        fn go(k: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in 0..=left {
                cur.push(x);
                go(k, left - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self.k, depth as u64, &mut Vec::new(), &mut out);
        out.sort_by_key(|p| (self.grade(p), p.clone()));
        out
    }

    fn right_lcm(&self, p: &Vec<u64>, q: &Vec<u64>) -> Lcm<Vec<u64>> {
        Lcm::Common(p.iter().zip(q).map(|(a, b)| *a.max(b)).collect())
    }

    fn left_divide(&self, p: &Vec<u64>, r: &Vec<u64>) -> Option<Vec<u64>> {
        p.iter().zip(r).map(|(a, b)| b.checked_sub(*a)).collect()
    }

    fn show(&self, p: &Vec<u64>) -> String {
        let parts: Vec<String> = p.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    fn parse(&self, s: &str) -> Result<Vec<u64>> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let v: Vec<u64> = t
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad vector {s:?}"))))
            .collect::<Result<_>>()?;
        if v.len() != self.k {
            return Err(Error::Parse(format!("expected {} coordinates in {s:?}", self.k)));
        }
        Ok(v)
    }

    fn foundation_exact(&self, f: &[Vec<u64>]) -> Option<FoundationVerdict<Vec<u64>>> {
        Some(if f.is_empty() {
            FoundationVerdict::No(self.identity())
        } else {
            FoundationVerdict::Yes
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let m = NatPow::new(2);
        assert_eq!(m.enumerate(2).len(), 6);
        assert_eq!(m.parse("(1,2)").unwrap(), vec![1, 2]);
        assert_eq!(m.show(&vec![3, 0]), "(3,0)");
        assert!(m.parse("(1)").is_err());
        assert_eq!(m.right_lcm(&vec![1, 2], &vec![2, 0]), Lcm::Common(vec![2, 2]));
        assert_eq!(m.left_divide(&vec![1, 2], &vec![2, 2]), Some(vec![1, 0]));
        assert_eq!(m.left_divide(&vec![1, 2], &vec![2, 1]), None);
    }
}
