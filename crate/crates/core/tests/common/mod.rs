//! Brute-force reference implementations shared by the integration tests.
//! They work directly from definitions and share no code with the library
//! beyond its public types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use xjoin::lcmhull::{RightLcmMonoid, ZappaSzep};
use xjoin::semilattice::FinMeetSemilattice;

/// A partial injection of `{0, …, k-1}`: `m[i]` is the image of `i`.
pub type PMap = Vec<Option<usize>>;

pub fn all_partial_injections(k: usize) -> Vec<PMap> {
    let mut out = Vec::new();
    let mut cur = vec![None; k];
    fn go(i: usize, k: usize, cur: &mut PMap, out: &mut Vec<PMap>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        cur[i] = None;
        go(i + 1, k, cur, out);
        for j in 0..k {
            if !cur[..i].contains(&Some(j)) {
                cur[i] = Some(j);
                go(i + 1, k, cur, out);
            }
        }
        cur[i] = None;
    }
    go(0, k, &mut cur, &mut out);
    out
}

/// Matrix units `i ↦ j` of `k` points plus the empty map.
pub fn brandt_maps(k: usize) -> Vec<PMap> {
    let mut out = vec![vec![None; k]];
    for i in 0..k {
        for j in 0..k {
            let mut m = vec![None; k];
            m[i] = Some(j);
            out.push(m);
        }
    }
    out
}

/// `s ∘ t`, `t` first.
pub fn compose(s: &PMap, t: &PMap) -> PMap {
    t.iter().map(|x| x.and_then(|y| s[y])).collect()
}

pub fn inverse(s: &PMap) -> PMap {
    let mut out = vec![None; s.len()];
    for (i, x) in s.iter().enumerate() {
        if let Some(j) = x {
            out[*j] = Some(i);
        }
    }
    out
}

fn is_idem(s: &PMap) -> bool {
    compose(s, s) == *s
}

fn is_zero(s: &PMap) -> bool {
    s.iter().all(Option::is_none)
}

/// `e ≤ f` for idempotents: `e = ef`.
fn idem_leq(e: &PMap, f: &PMap) -> bool {
    compose(e, f) == *e
}

/// A germ groupoid computed from scratch: filters are sets of idempotents,
/// germs are classes of pairs `(s, F)` with `s⁻¹s ∈ F`.
pub struct OracleGroupoid {
    pub filters: Vec<BTreeSet<PMap>>,
    /// `(source filter, range filter)` per arrow.
    pub arrows: Vec<(usize, usize)>,
}

/// Every filter of the idempotents of `maps` not containing zero.
pub fn filters(maps: &[PMap]) -> Vec<BTreeSet<PMap>> {
    let idem: Vec<&PMap> = maps.iter().filter(|m| is_idem(m) && !is_zero(m)).collect();
    let n = idem.len();
    let mut out = Vec::new();
    for mask in 1u32..1 << n {
        let set: BTreeSet<PMap> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| idem[i].clone()).collect();
        let up = set
            .iter()
            .all(|e| idem.iter().all(|f| !idem_leq(e, f) || set.contains(*f)));
        let meets = set.iter().all(|e| set.iter().all(|f| set.contains(&compose(e, f))));
        if up && meets {
            out.push(set);
        }
    }
    out
}

/// Filters `F` such that whenever `x ∈ F` and `Z` covers `x`, `F` meets `Z`.
pub fn tight_filters(maps: &[PMap]) -> Vec<BTreeSet<PMap>> {
    let idem: Vec<PMap> = maps.iter().filter(|m| is_idem(m)).cloned().collect();
    let n = idem.len();
    let mut covers = Vec::new();
    for x in &idem {
        let below: Vec<&PMap> = idem.iter().filter(|y| !is_zero(y) && idem_leq(y, x)).collect();
        for mask in 0u32..1 << n {
            let z: Vec<&PMap> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &idem[i]).collect();
            if z.iter().all(|z| idem_leq(z, x)) && below.iter().all(|y| z.iter().any(|z| !is_zero(&compose(y, z)))) {
                covers.push((x.clone(), z.into_iter().cloned().collect::<Vec<_>>()));
            }
        }
    }
    filters(maps)
        .into_iter()
        .filter(|f| {
            covers
                .iter()
                .all(|(x, z)| !f.contains(x) || z.iter().any(|z| f.contains(z)))
        })
        .collect()
}

pub fn germ_groupoid(maps: &[PMap], filters: Vec<BTreeSet<PMap>>) -> OracleGroupoid {
    let act = |s: &PMap, f: &BTreeSet<PMap>| -> BTreeSet<PMap> {
        let si = inverse(s);
        let pushed: Vec<PMap> = f.iter().map(|e| compose(&compose(s, e), &si)).collect();
        maps.iter()
            .filter(|g| is_idem(g) && !is_zero(g) && pushed.iter().any(|p| !is_zero(p) && idem_leq(p, g)))
            .cloned()
            .collect()
    };
    let mut germs: Vec<(PMap, usize)> = Vec::new();
    let mut arrows = Vec::new();
    for (fi, f) in filters.iter().enumerate() {
        for s in maps {
            let d = compose(&inverse(s), s);
            if is_zero(s) || !f.contains(&d) {
                continue;
            }
            let same = germs
                .iter()
                .any(|(t, tf)| *tf == fi && f.iter().any(|e| compose(s, e) == compose(t, e)));
            if same {
                continue;
            }
            let r = act(s, f);
            let ri = filters
                .iter()
                .position(|g| *g == r)
                .expect("the action preserves the filter set");
            germs.push((s.clone(), fi));
            arrows.push((fi, ri));
        }
    }
    OracleGroupoid { filters, arrows }
}

impl OracleGroupoid {
    /// Every set of arrows on which source and range are injective.
    pub fn bisections(&self) -> Vec<u64> {
        let n = self.arrows.len();
        assert!(n < 30);
        (0u64..1 << n)
            .filter(|&m| {
                let (mut src, mut rng) = (BTreeSet::new(), BTreeSet::new());
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .all(|i| src.insert(self.arrows[i].0) && rng.insert(self.arrows[i].1))
            })
            .collect()
    }

    /// Distinct restrictions of bisections to arrows whose source lies in `keep`.
    pub fn restricted_class_count(&self, keep: &[usize]) -> usize {
        let mask: u64 = (0..self.arrows.len())
            .filter(|&i| keep.contains(&self.arrows[i].0))
            .map(|i| 1 << i)
            .sum();
        self.bisections()
            .into_iter()
            .map(|b| b & mask)
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Characters of `e` as explicit truth tables.
pub fn character_tables(e: &FinMeetSemilattice) -> Vec<Vec<bool>> {
    let n = e.size();
    assert!(n <= 16);
    (0u32..1 << n)
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|phi| !phi[0] && phi.iter().any(|&b| b))
        .filter(|phi| (0..n).all(|x| (0..n).all(|y| phi[e.meet(x, y)] == (phi[x] && phi[y]))))
        .collect()
}

/// Characters satisfying `φ(x) ⇒ ∃ z ∈ Z, φ(z)` for every subset `Z` of `E`
/// such that each nonzero `y ≤ x` meets a member of `Z`.
pub fn tight_tables(e: &FinMeetSemilattice) -> Vec<Vec<bool>> {
    let n = e.size();
    let le = |x: usize, y: usize| e.meet(x, y) == x;
    let mut covers = Vec::new();
    for x in 0..n {
        for mask in 0u32..1 << n {
            let ok = (1..n)
                .filter(|&y| le(y, x))
                .all(|y| (0..n).any(|z| mask >> z & 1 == 1 && e.meet(y, z) != 0));
            if ok {
                covers.push((x, mask));
            }
        }
    }
    character_tables(e)
        .into_iter()
        .filter(|phi| {
            covers
                .iter()
                .all(|&(x, mask)| !phi[x] || (0..n).any(|z| mask >> z & 1 == 1 && phi[z]))
        })
        .collect()
}

/// `pP ∩ qP` by listing `p·x` over a fragment and keeping what is also a
/// multiple of `q`; `None` if the fragment holds no common multiple.
pub fn common_multiples<M: RightLcmMonoid>(m: &M, p: &M::Elem, q: &M::Elem, depth: usize) -> Vec<M::Elem> {
    let frag = m.enumerate(depth);
    let pp: BTreeSet<M::Elem> = frag.iter().map(|x| m.multiply(p, x)).collect();
    let qq: BTreeSet<M::Elem> = frag.iter().map(|y| m.multiply(q, y)).collect();
    pp.intersection(&qq).cloned().collect()
}

/// `X_A` and `X_U` of a Zappa-Szép product by direct enumeration, as
/// display strings.
pub fn xa_xu_reference(p: &ZappaSzep, depth: usize) -> (Vec<String>, Vec<String>) {
    let idem = |x: &(Vec<u8>, Vec<u8>)| format!("[{0},{0}]", p.show(x));
    let rel = |e: &(Vec<u8>, Vec<u8>), parts: &[(Vec<u8>, Vec<u8>)]| {
        let mut ps: Vec<_> = parts.to_vec();
        ps.sort();
        let shown: Vec<String> = ps.iter().map(idem).collect();
        format!("({}, {{{}}})", idem(e), shown.join(", "))
    };
    let frag = p.enumerate(depth);
    let a_part: Vec<_> = frag.iter().filter(|x| x.0.is_empty()).cloned().collect();
    let u_part: Vec<_> = frag.iter().filter(|x| x.1.is_empty()).cloned().collect();

    let mut xa = Vec::new();
    for a in &a_part {
        for b in &a_part {
            if a_part.iter().any(|c| p.multiply(a, c) == *b) {
                xa.push((a.clone(), vec![b.clone()]));
            }
        }
    }

    let mut xu = Vec::new();
    for s in &u_part {
        let below: Vec<_> = u_part.iter().filter(|t| t.0.starts_with(&s.0)).cloned().collect();
        let k = below.len();
        assert!(k <= 20);
        let meets = |x: &(Vec<u8>, Vec<u8>), t: &(Vec<u8>, Vec<u8>)| x.0.starts_with(&t.0) || t.0.starts_with(&x.0);
        let found: Vec<u32> = (1u32..1 << k)
            .filter(|&m| {
                below
                    .iter()
                    .all(|t| (0..k).any(|i| m >> i & 1 == 1 && meets(&below[i], t)))
            })
            .collect();
        for &m in &found {
            if found.iter().any(|&o| o != m && o & m == o) {
                continue;
            }
            let parts: Vec<_> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| below[i].clone()).collect();
            xu.push((s.clone(), parts));
        }
    }
    let mut xa: Vec<String> = {
        xa.sort();
        xa.iter().map(|(e, ps)| rel(e, ps)).collect()
    };
    let mut xu: Vec<String> = {
        xu.sort();
        xu.iter().map(|(e, ps)| rel(e, ps)).collect()
    };
    xa.sort();
    xu.sort();
    (xa, xu)
}
