//! Finite inverse semigroups with zero, given by multiplication tables.
//!
//! Index 0 is always the zero. The product `st` of partial bijections is the
//! composite `s ∘ t`, with `t` applied first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::semilattice::{self, Character, Elem, FinMeetSemilattice, Spectrum, XRelation};
use crate::{Error, Result};

pub type SElem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FinInverseSemigroup {
    n: usize,
    mult: Vec<SElem>,
    labels: Vec<String>,
    inv: Vec<SElem>,
    idempotents: Vec<SElem>,
    idem_pos: Vec<Option<Elem>>,
    e: FinMeetSemilattice,
}

impl fmt::Debug for FinInverseSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinInverseSemigroup")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FinInverseSemigroup {
    /// Validates a table whose zero sits at index `zero`; the zero is moved
    /// to index 0.
    pub fn new(labels: Vec<String>, table: Vec<Vec<SElem>>, zero: SElem) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable(format!("multiplication table must be {n}×{n}")));
        }
        if zero >= n {
            return Err(Error::IndexOutOfRange { index: zero, size: n });
        }
        for row in &table {
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, size: n });
            }
        }
        // old index of each new position
        let mut order: Vec<usize> = vec![zero];
        order.extend((0..n).filter(|&i| i != zero));
        let mut new_of = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let labels: Vec<String> = order.iter().map(|&o| labels[o].clone()).collect();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = new_of[table[order[a]][order[b]]];
            }
        }
        Self::from_canonical(labels, mult)
    }

    fn from_canonical(labels: Vec<String>, mult: Vec<SElem>) -> Result<Self> {
        let n = labels.len();
        let m = |a: usize, b: usize| mult[a * n + b];
        let w = |xs: &[usize]| {
            let v: Vec<&str> = xs.iter().map(|&x| labels[x].as_str()).collect();
            format!("({})", v.join(", "))
        };
        for a in 0..n {
            if m(0, a) != 0 || m(a, 0) != 0 {
                return Err(Error::LawViolated {
                    law: "zero absorbs",
                    witness: w(&[a]),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::LawViolated {
                            law: "associativity",
                            witness: w(&[a, b, c]),
                        });
                    }
                }
            }
        }
        let idempotents: Vec<SElem> = (0..n).filter(|&a| m(a, a) == a).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                if m(e, f) != m(f, e) {
                    return Err(Error::LawViolated {
                        law: "idempotents commute",
                        witness: w(&[e, f]),
                    });
                }
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            let cands: Vec<usize> = (0..n).filter(|&t| m(m(a, t), a) == a && m(m(t, a), t) == t).collect();
            if cands.len() != 1 {
                return Err(Error::LawViolated {
                    law: "unique inverse",
                    witness: w(&[a]),
                });
            }
            *slot = cands[0];
        }
        let mut idem_pos = vec![None; n];
        for (i, &e) in idempotents.iter().enumerate() {
            idem_pos[e] = Some(i);
        }
        let e_labels = idempotents.iter().map(|&e| labels[e].clone()).collect();
        let e_table = idempotents
            .iter()
            .map(|&x| {
                idempotents
                    .iter()
                    .map(|&y| idem_pos[m(x, y)].expect("idempotents closed under product"))
                    .collect()
            })
            .collect();
        let e = FinMeetSemilattice::new(e_labels, e_table)?;
        Ok(FinInverseSemigroup {
            n,
            mult,
            labels,
            inv,
            idempotents,
            idem_pos,
            e,
        })
    }

    /// The inverse subsemigroup generated by partial bijections of
    /// `{0, …, points-1}`, with the empty map as zero.
    pub fn from_partial_maps(points: usize, gens: &[PartialMap]) -> Result<Self> {
        for g in gens {
            if g.points() != points {
                return Err(Error::Precondition(format!("{g} is not a map on {points} points")));
            }
        }
        let mut set: BTreeSet<PartialMap> = BTreeSet::new();
        set.insert(PartialMap::empty(points));
        for g in gens {
            set.insert(g.clone());
            set.insert(g.inverse());
        }
        loop {
            let cur: Vec<PartialMap> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                break;
            }
        }
        let mut maps: Vec<PartialMap> = set.into_iter().collect();
        maps.sort_by_key(|p| (p.domain_size(), !p.is_identity(), p.sort_key()));
        let labels: Vec<String> = maps.iter().map(|p| p.label()).collect();
        let index: BTreeMap<&PartialMap, usize> = maps.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = maps.len();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&maps[a].compose(&maps[b])];
            }
        }
        Self::from_canonical(labels, mult)
    }

    /// All partial bijections of `k` points.
    pub fn symmetric_inverse_monoid(k: usize) -> Result<Self> {
        let mut gens = Vec::new();
        // full transpositions and a cycle generate the symmetric group;
        // one partial identity then gives every rank
        if k >= 2 {
            gens.push(PartialMap::from_pairs(k, (0..k).map(|i| (i, (i + 1) % k)))?);
            let mut swap: Vec<(usize, usize)> = (2..k).map(|i| (i, i)).collect();
            swap.push((0, 1));
            swap.push((1, 0));
            gens.push(PartialMap::from_pairs(k, swap)?);
        }
        if k >= 1 {
            gens.push(PartialMap::identity(k));
            gens.push(PartialMap::from_pairs(k, (1..k).map(|i| (i, i)))?);
        }
        Self::from_partial_maps(k, &gens)
    }

    /// The Brandt semigroup `B_k` of matrix units: partial maps `i ↦ j`.
    pub fn brandt(k: usize) -> Result<Self> {
        let gens: Vec<PartialMap> = (1..k)
            .map(|j| PartialMap::from_pairs(k, [(0, j)]))
            .collect::<Result<_>>()?;
        let gens = if k == 1 {
            vec![PartialMap::from_pairs(1, [(0, 0)])?]
        } else {
            gens
        };
        Self::from_partial_maps(k, &gens)
    }

    /// The cyclic group of order `k` with a zero adjoined.
    pub fn cyclic_group_with_zero(k: usize) -> Result<Self> {
        let cycle = PartialMap::from_pairs(k, (0..k).map(|i| (i, (i + 1) % k)))?;
        let mut s = Self::from_partial_maps(k, &[cycle])?;
        if k >= 2 {
            // name the rotations g^i
            for (i, l) in s.labels.iter_mut().enumerate().skip(2) {
                *l = format!("g{}", i - 1);
            }
            for (pos, &id) in s.idempotents.iter().enumerate() {
                s.e.set_label(pos, s.labels[id].clone());
            }
        }
        Ok(s)
    }

    /// A semilattice viewed as an inverse semigroup.
    pub fn from_semilattice(e: &FinMeetSemilattice) -> Result<Self> {
        Self::new(e.labels().to_vec(), e.meet_table(), 0)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: SElem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<SElem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check(&self, a: SElem) -> Result<()> {
        if a < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, size: self.n })
        }
    }

    pub fn mul(&self, a: SElem, b: SElem) -> SElem {
        self.mult[a * self.n + b]
    }

    pub fn mul_all(&self, xs: &[SElem]) -> SElem {
        xs.iter().skip(1).fold(xs[0], |acc, &x| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<SElem>> {
        self.mult.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn inv(&self, a: SElem) -> SElem {
        self.inv[a]
    }

    /// `d(a) = a⁻¹a`.
    pub fn d(&self, a: SElem) -> SElem {
        self.mul(self.inv[a], a)
    }

    /// `r(a) = aa⁻¹`.
    pub fn r(&self, a: SElem) -> SElem {
        self.mul(a, self.inv[a])
    }

    pub fn is_idempotent(&self, a: SElem) -> bool {
        self.idem_pos[a].is_some()
    }

    pub fn idempotents(&self) -> &[SElem] {
        &self.idempotents
    }

    /// `E(S)`, with element `i` standing for `idempotents()[i]`.
    pub fn semilattice(&self) -> &FinMeetSemilattice {
        &self.e
    }

    /// Position of an idempotent inside [`Self::semilattice`].
    pub fn to_e(&self, a: SElem) -> Result<Elem> {
        self.check(a)?;
        self.idem_pos[a].ok_or_else(|| Error::Precondition(format!("{} is not idempotent", self.labels[a])))
    }

    pub(crate) fn e_of(&self, a: SElem) -> Elem {
        self.idem_pos[a].expect("idempotent")
    }

    pub fn from_e(&self, x: Elem) -> SElem {
        self.idempotents[x]
    }

    /// `a ≤ b` iff `a = b·d(a)`.
    pub fn natural_leq(&self, a: SElem, b: SElem) -> bool {
        a == self.mul(b, self.d(a))
    }

    /// `a⁻¹b` and `ab⁻¹` are idempotent.
    pub fn compatible(&self, a: SElem, b: SElem) -> bool {
        self.is_idempotent(self.mul(self.inv[a], b)) && self.is_idempotent(self.mul(a, self.inv[b]))
    }

    /// `s⁻¹es`.
    pub fn conjugate(&self, s: SElem, e: SElem) -> Result<SElem> {
        self.check(s)?;
        self.to_e(e)?;
        Ok(self.conj(s, e))
    }

    fn conj(&self, s: SElem, e: SElem) -> SElem {
        self.mul(self.mul(self.inv[s], e), s)
    }

    /// `(e, Z) ↦ (s⁻¹es, s⁻¹Zs)` on relations over `E(S)`.
    pub fn conjugate_relation(&self, s: SElem, rel: &XRelation) -> XRelation {
        let c = |x: Elem| self.e_of(self.conj(s, self.from_e(x)));
        XRelation {
            e: c(rel.e),
            parts: rel.parts.iter().map(c).collect(),
        }
    }

    /// The smallest `S`-invariant relation set containing `xs`.
    pub fn invariant_closure(&self, xs: &[XRelation]) -> Vec<XRelation> {
        let mut set: BTreeSet<XRelation> = xs.iter().copied().collect();
        let mut work: Vec<XRelation> = set.iter().copied().collect();
        while let Some(rel) = work.pop() {
            for s in 0..self.n {
                let c = self.conjugate_relation(s, &rel);
                if set.insert(c) {
                    work.push(c);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_invariant(&self, xs: &[XRelation]) -> bool {
        let set: BTreeSet<XRelation> = xs.iter().copied().collect();
        xs.iter()
            .all(|r| (0..self.n).all(|s| set.contains(&self.conjugate_relation(s, r))))
    }

    /// `s·φ`, defined when `φ(d(s)) = 1`.
    pub fn act(&self, s: SElem, c: Character) -> Result<Character> {
        self.check(s)?;
        self.act_opt(s, c).ok_or_else(|| {
            Error::Precondition(format!(
                "{} is outside the domain of {}",
                self.e.label(c.gen()),
                self.labels[s]
            ))
        })
    }

    pub fn act_opt(&self, s: SElem, c: Character) -> Option<Character> {
        let g = self.from_e(c.gen());
        if !self.natural_leq(g, self.d(s)) {
            return None;
        }
        let h = self.mul(self.mul(s, g), self.inv[s]);
        Character::new(&self.e, self.e_of(h)).ok()
    }

    /// The spectrum cut out by `X′`.
    pub fn closed_spectrum(&self, xs: &[XRelation]) -> Spectrum {
        semilattice::spectrum(&self.e, &self.invariant_closure(xs))
    }

    pub fn is_invariant_spectrum(&self, sp: &Spectrum) -> bool {
        sp.chars()
            .iter()
            .all(|&c| (0..self.n).all(|s| self.act_opt(s, c).is_none_or(|t| sp.contains(t))))
    }

    /// The `X′`-spectrum is closed under the natural action.
    pub fn spectrum_invariant(&self, xs: &[XRelation]) -> bool {
        self.is_invariant_spectrum(&self.closed_spectrum(xs))
    }

    /// Every invariant set of characters, the empty one included, ordered by
    /// size and then by generator mask.
    pub fn invariant_spectra(&self) -> Result<Vec<Spectrum>> {
        let all = semilattice::characters(&self.e);
        let k = all.len();
        if k > 20 {
            return Err(Error::Capacity {
                what: "characters",
                count: k,
                limit: 20,
            });
        }
        let mut out = Vec::new();
        for mask in 0u32..1 << k {
            let chars = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| all.chars()[i]).collect();
            let sp = Spectrum::from_chars(chars);
            if self.is_invariant_spectrum(&sp) {
                out.push((mask.count_ones(), mask, sp));
            }
        }
        out.sort_by_key(|(n, m, _)| (*n, *m));
        Ok(out.into_iter().map(|(_, _, s)| s).collect())
    }

    pub fn to_json(&self) -> InvSgpJson {
        InvSgpJson {
            elements: self.labels.clone(),
            mult: self
                .table()
                .into_iter()
                .map(|r| r.into_iter().map(|x| Cell::Label(self.labels[x].clone())).collect())
                .collect(),
            zero: self.labels[0].clone(),
        }
    }

    pub fn from_json(json: &InvSgpJson) -> Result<Self> {
        let lookup = |l: &str| {
            json.elements
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let table = json
            .mult
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        Cell::Index(i) => Ok(*i),
                        Cell::Label(l) => lookup(l),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.elements.clone(), table, lookup(&json.zero)?)
    }

    /// Accepts either a table document or a generator document.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        if v.get("partial_maps").is_some() {
            let g: GeneratorJson = serde_json::from_value(v)?;
            let gens = g
                .partial_maps
                .iter()
                .map(|m| PartialMap::from_json(g.points, m))
                .collect::<Result<Vec<_>>>()?;
            Self::from_partial_maps(g.points, &gens)
        } else {
            Self::from_json(&serde_json::from_value(v)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvSgpJson {
    pub elements: Vec<String>,
    pub mult: Vec<Vec<Cell>>,
    pub zero: String,
}

/// Points are numbered from 1 in this format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub points: usize,
    pub partial_maps: Vec<BTreeMap<String, String>>,
}

/// A partial bijection of `{0, …, k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    image: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn empty(k: usize) -> Self {
        PartialMap { image: vec![None; k] }
    }

    pub fn identity(k: usize) -> Self {
        PartialMap {
            image: (0..k).map(Some).collect(),
        }
    }

    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut image = vec![None; k];
        let mut hit = vec![false; k];
        for (x, y) in pairs {
            if x >= k || y >= k {
                return Err(Error::IndexOutOfRange {
                    index: x.max(y),
                    size: k,
                });
            }
            if image[x].is_some() || hit[y] {
                return Err(Error::Precondition(format!("{} ↦ {} breaks injectivity", x + 1, y + 1)));
            }
            image[x] = Some(y);
            hit[y] = true;
        }
        Ok(PartialMap { image })
    }

    fn from_json(k: usize, m: &BTreeMap<String, String>) -> Result<Self> {
        let point = |s: &String| -> Result<usize> {
            let p: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("point {s:?} is not a number")))?;
            p.checked_sub(1)
                .ok_or_else(|| Error::Parse("points are numbered from 1".into()))
        };
        let pairs = m
            .iter()
            .map(|(x, y)| Ok((point(x)?, point(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(k, pairs)
    }

    fn sort_key(&self) -> Vec<usize> {
        self.image.iter().map(|y| y.unwrap_or(usize::MAX)).collect()
    }

    pub fn points(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.image.get(x).copied().flatten()
    }

    pub fn domain_size(&self) -> usize {
        self.image.iter().flatten().count()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, y)| y.is_none_or(|y| y == i))
    }

    /// `self ∘ other`: `other` first.
    pub fn compose(&self, other: &PartialMap) -> PartialMap {
        PartialMap {
            image: other.image.iter().map(|y| y.and_then(|y| self.image[y])).collect(),
        }
    }

    pub fn inverse(&self) -> PartialMap {
        let mut image = vec![None; self.image.len()];
        for (x, y) in self.image.iter().enumerate() {
            if let Some(y) = y {
                image[*y] = Some(x);
            }
        }
        PartialMap { image }
    }

    /// `0`, `1`, `e13` for partial identities, else `(1↦2,2↦1)`.
    pub fn label(&self) -> String {
        let k = self.image.len();
        let dom = self.domain_size();
        if dom == 0 {
            return "0".into();
        }
        if self.is_identity() {
            if dom == k {
                return "1".into();
            }
            let pts: String = (0..k)
                .filter(|&i| self.image[i].is_some())
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(if k > 9 { "," } else { "" });
            return format!("e{pts}");
        }
        self.to_string()
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .image
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| format!("{}↦{}", x + 1, y + 1)))
            .collect();
        write!(f, "({})", pairs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i2() -> FinInverseSemigroup {
        FinInverseSemigroup::symmetric_inverse_monoid(2).unwrap()
    }

    #[test]
    fn i2_structure() {
        let s = i2();
        assert_eq!(s.size(), 7);
        assert_eq!(s.labels()[0], "0");
        for l in ["e1", "e2", "1", "(1↦2)", "(2↦1)", "(1↦2,2↦1)"] {
            s.index_of(l).unwrap();
        }
        assert_eq!(s.semilattice().size(), 4);
        assert!(s.semilattice().is_boolean());
        assert_eq!(FinInverseSemigroup::symmetric_inverse_monoid(3).unwrap().size(), 34);
    }

    #[test]
    fn other_builtins() {
        let b2 = FinInverseSemigroup::brandt(2).unwrap();
        assert_eq!(b2.size(), 5);
        assert_eq!(b2.semilattice().size(), 3);
        let g = FinInverseSemigroup::cyclic_group_with_zero(2).unwrap();
        assert_eq!(g.labels(), &["0", "1", "g1"]);
        assert_eq!(g.semilattice().labels(), &["0", "1"]);
        let e = FinInverseSemigroup::from_semilattice(&FinMeetSemilattice::diamond()).unwrap();
        assert_eq!(e.idempotents().len(), 4);
    }

    #[test]
    fn rejects_left_zero_band() {
        let labels = vec!["0".into(), "a".into(), "b".into()];
        let table = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]];
        let err = FinInverseSemigroup::new(labels, table, 0).unwrap_err();
        assert!(matches!(
            err,
            Error::LawViolated {
                law: "idempotents commute",
                ..
            }
        ));
    }

    #[test]
    fn rejects_bad_zero_and_non_associative() {
        let labels = vec!["0".into(), "a".into()];
        let err = FinInverseSemigroup::new(labels.clone(), vec![vec![0, 1], vec![1, 1]], 0).unwrap_err();
        assert!(matches!(
            err,
            Error::LawViolated {
                law: "zero absorbs",
                ..
            }
        ));
        let labels = vec!["0".into(), "a".into(), "b".into()];
        let table = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 1]];
        assert!(FinInverseSemigroup::new(labels, table, 0).is_err());
    }

    #[test]
    fn zero_is_moved_to_front() {
        let labels = vec!["1".into(), "z".into()];
        let s = FinInverseSemigroup::new(labels, vec![vec![0, 1], vec![1, 1]], 1).unwrap();
        assert_eq!(s.labels(), &["z", "1"]);
        let again = FinInverseSemigroup::from_json(&s.to_json()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn order_compatibility_conjugation() {
        let s = i2();
        let ix = |l: &str| s.index_of(l).unwrap();
        assert!(s.natural_leq(ix("e1"), ix("1")));
        assert!(!s.natural_leq(ix("(1↦2,2↦1)"), ix("1")));
        assert!((0..s.size()).all(|a| s.natural_leq(0, a)));
        assert!(s.compatible(ix("e1"), ix("e2")));
        assert!(!s.compatible(ix("1"), ix("(1↦2,2↦1)")));
        assert!((0..s.size()).all(|a| s.compatible(a, a)));
        assert_eq!(s.conjugate(ix("(1↦2)"), ix("e2")).unwrap(), ix("e1"));
        assert_eq!(s.conjugate(ix("1"), ix("e1")).unwrap(), ix("e1"));
        assert_eq!(s.conjugate(0, ix("e1")).unwrap(), 0);
        assert!(s.conjugate(ix("1"), ix("(1↦2)")).is_err());
    }

    #[test]
    fn closure_example() {
        let s = i2();
        let e = s.semilattice();
        let ex = |l: &str| e.index_of(l).unwrap();
        let x = vec![XRelation::new(ex("1"), [ex("e1"), ex("e2")])];
        let closed = s.invariant_closure(&x);
        assert!(closed.contains(&XRelation::new(ex("e1"), [ex("e1"), 0])));
        assert!(closed.contains(&XRelation::new(ex("e2"), [0, ex("e2")])));
        assert!(s.is_invariant(&closed));
        assert_eq!(s.invariant_closure(&closed), closed);
        assert!(s.invariant_closure(&[]).is_empty());
    }

    #[test]
    fn action_examples() {
        let s = i2();
        let e = s.semilattice();
        let ch = |l: &str| Character::new(e, e.index_of(l).unwrap()).unwrap();
        let st = s.index_of("(1↦2)").unwrap();
        assert_eq!(s.act(st, ch("e1")).unwrap(), ch("e2"));
        assert_eq!(s.act(s.index_of("1").unwrap(), ch("e1")).unwrap(), ch("e1"));
        assert!(s.act(st, ch("1")).is_err());
    }

    #[test]
    fn spectra_are_invariant() {
        let s = i2();
        let e = s.semilattice();
        for xs in [
            Vec::new(),
            semilattice::x_tight(e),
            semilattice::x_prime(e),
            semilattice::x_core(e),
        ] {
            assert!(s.spectrum_invariant(&xs));
        }
        let one = e.index_of("1").unwrap();
        let x = vec![XRelation::new(one, [e.index_of("e1").unwrap()])];
        assert!(!s.is_invariant_spectrum(&semilattice::spectrum(e, &x)));
        assert!(s.spectrum_invariant(&x));
        let b2 = FinInverseSemigroup::brandt(2).unwrap();
        assert!(b2.spectrum_invariant(&semilattice::x_tight(b2.semilattice())));
    }

    #[test]
    fn generator_json() {
        let text = r#"{"points": 2, "partial_maps": [{"1": "2"}]}"#;
        let s = FinInverseSemigroup::parse_json(text).unwrap();
        assert_eq!(s.size(), 5);
        let text = r#"{"points": 2, "partial_maps": [{"1": "2", "2": "2"}]}"#;
        assert!(FinInverseSemigroup::parse_json(text).is_err());
    }
}
