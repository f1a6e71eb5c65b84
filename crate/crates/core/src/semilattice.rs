//! Finite meet-semilattices with bottom, covers, characters and X-to-join
//! spectra.
//!
//! Elements are indices `0..n` with `0` the bottom. A character is stored by
//! the generator `g` of its principal filter and evaluates as `φ_g(x) = [g ≤ x]`;
//! on a finite semilattice every character has this form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::exec::Exec;
use crate::{Error, Result};

pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FinMeetSemilattice {
    n: usize,
    meet: Vec<Elem>,
    labels: Vec<String>,
    below: Vec<Bits>,
    // nonzero_meet[y] = { z : y ∧ z ≠ 0 }
    nonzero_meet: Vec<Bits>,
}

impl fmt::Debug for FinMeetSemilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinMeetSemilattice")
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FinMeetSemilattice {
    /// Builds a semilattice from a meet table, checking every law
    /// exhaustively. Index 0 must be the bottom.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("a semilattice needs a bottom element".into()));
        }
        Bits::check_capacity("semilattice", n)?;
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("meet table must be {n}×{n}")));
        }
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
            }
        }
        let m = |x: usize, y: usize| table[x][y];
        let l = |x: usize| labels[x].as_str();
        for x in 0..n {
            if m(0, x) != 0 || m(x, 0) != 0 {
                return Err(Error::LawViolated {
                    law: "bottom absorption 0∧x = 0",
                    witness: format!("({}, {}, {})", l(0), l(x), l(m(0, x).max(m(x, 0)))),
                });
            }
        }
        for x in 0..n {
            if m(x, x) != x {
                return Err(Error::LawViolated {
                    law: "idempotence x∧x = x",
                    witness: format!("({}, {}, {})", l(x), l(x), l(m(x, x))),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if m(x, y) != m(y, x) {
                    return Err(Error::LawViolated {
                        law: "commutativity x∧y = y∧x",
                        witness: format!("({}, {}, {})", l(x), l(y), l(m(x, y))),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(Error::LawViolated {
                            law: "associativity (x∧y)∧z = x∧(y∧z)",
                            witness: format!("({}, {}, {})", l(x), l(y), l(z)),
                        });
                    }
                }
            }
        }
        let meet: Vec<Elem> = table.into_iter().flatten().collect();
        let mut below = vec![Bits::EMPTY; n];
        let mut nonzero_meet = vec![Bits::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                let xy = meet[x * n + y];
                if xy == y {
                    below[x].insert(y);
                }
                if xy != 0 {
                    nonzero_meet[x].insert(y);
                }
            }
        }
        Ok(FinMeetSemilattice {
            n,
            meet,
            labels,
            below,
            nonzero_meet,
        })
    }

    /// The lattice of a family of sets closed under intersection, ordered by
    /// inclusion. The empty set is added if missing and becomes the bottom.
    pub fn from_set_family(sets: &[Bits], labels: Option<Vec<String>>) -> Result<Self> {
        let mut family: Vec<Bits> = sets.to_vec();
        family.push(Bits::EMPTY);
        family.sort_by_key(|s| (s.len(), s.0));
        family.dedup();
        let index: HashMap<Bits, usize> = family.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = family.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let m = family[i] & family[j];
                table[i][j] = *index
                    .get(&m)
                    .ok_or_else(|| Error::MalformedTable(format!("family not closed under intersection at {:?}", m)))?;
            }
        }
        let labels = match labels {
            Some(l) => l,
            None => family
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        "0".to_string()
                    } else {
                        let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                        format!("{{{}}}", parts.join(","))
                    }
                })
                .collect(),
        };
        FinMeetSemilattice::new(labels, table)
    }

    /// Closes a family under pairwise intersection and builds its semilattice.
    pub fn intersection_closure(sets: &[Bits]) -> Result<Self> {
        let mut family: Vec<Bits> = sets.to_vec();
        family.push(Bits::EMPTY);
        family.sort();
        family.dedup();
        loop {
            let mut grown = family.clone();
            for &a in &family {
                for &b in &family {
                    grown.push(a & b);
                }
            }
            grown.sort();
            grown.dedup();
            if grown.len() == family.len() {
                break;
            }
            family = grown;
        }
        FinMeetSemilattice::from_set_family(&family, None)
    }

    /// The chain `0 < e1 < … < en`.
    pub fn chain(n: usize) -> Self {
        let mut labels = vec!["0".to_string()];
        labels.extend((1..=n).map(|i| format!("e{i}")));
        let table = (0..=n).map(|x| (0..=n).map(|y| x.min(y)).collect()).collect();
        FinMeetSemilattice::new(labels, table).expect("chain is a semilattice")
    }

    /// `{0, a, b, 1}` with incomparable atoms `a`, `b`.
    pub fn diamond() -> Self {
        let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
        let table = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]];
        FinMeetSemilattice::new(labels, table).expect("diamond is a semilattice")
    }

    /// `k` pairwise disjoint atoms over a bottom.
    pub fn antichain(k: usize) -> Self {
        let sets: Vec<Bits> = (0..k).map(Bits::single).collect();
        let mut labels = vec!["0".to_string()];
        labels.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
        FinMeetSemilattice::from_set_family(&sets, Some(labels)).expect("antichain")
    }

    /// The powerset of a `k`-element set.
    pub fn boolean(k: usize) -> Self {
        let sets: Vec<Bits> = Bits::full(k).subsets().collect();
        FinMeetSemilattice::from_set_family(&sets, None).expect("powerset")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub(crate) fn set_label(&mut self, x: Elem, label: String) {
        self.labels[x] = label;
    }

    pub fn index_of(&self, label: &str) -> Result<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check(&self, x: Elem) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, size: self.n })
        }
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    pub fn meet_table(&self) -> Vec<Vec<Elem>> {
        self.meet.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `x ≤ y`, i.e. `x ∧ y = x`.
    pub fn leq(&self, x: Elem, y: Elem) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    pub(crate) fn le(&self, x: Elem, y: Elem) -> bool {
        self.below[y].contains(x)
    }

    /// `x↓` as a bit set.
    pub fn down_set(&self, x: Elem) -> Bits {
        self.below[x]
    }

    pub fn up_set(&self, x: Elem) -> Bits {
        (0..self.n).filter(|&y| self.le(x, y)).collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.n
    }

    pub fn is_atom(&self, x: Elem) -> bool {
        x != 0 && self.below[x].len() == 2
    }

    pub fn atoms(&self) -> Vec<Elem> {
        self.nonzero().filter(|&x| self.is_atom(x)).collect()
    }

    /// Least upper bound of a set, if it exists. `⋁∅ = 0`.
    pub fn join_of(&self, set: Bits) -> Option<Elem> {
        let uppers: Vec<Elem> = (0..self.n).filter(|&u| set.iter().all(|z| self.le(z, u))).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.le(u, v)))
    }

    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.join_of(Bits::single(x).with(y))
    }

    pub fn top(&self) -> Option<Elem> {
        (0..self.n).find(|&t| self.below[t] == Bits::full(self.n))
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.join(x, y).is_some()))
    }

    pub fn is_distributive(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        let j = |x, y| self.join(x, y).unwrap();
        (0..self.n).all(|x| {
            (0..self.n).all(|y| (0..self.n).all(|z| self.meet(x, j(y, z)) == j(self.meet(x, y), self.meet(x, z))))
        })
    }

    /// `x ∖ y`: the unique `z ≤ x` with `z ∧ y = 0` and `z ∨ (x ∧ y) = x`,
    /// when it exists.
    pub fn relative_complement(&self, x: Elem, y: Elem) -> Option<Elem> {
        let xy = self.meet(x, y);
        self.below[x]
            .iter()
            .find(|&z| self.meet(z, y) == 0 && self.join(z, xy) == Some(x))
    }

    /// Bounded, distributive and complemented.
    pub fn is_boolean(&self) -> bool {
        let Some(top) = self.top() else { return false };
        self.is_distributive() && (0..self.n).all(|x| self.relative_complement(top, x).is_some())
    }

    /// `{ z : y ∧ z ≠ 0 }`.
    pub(crate) fn nonzero_meets(&self, y: Elem) -> Bits {
        self.nonzero_meet[y]
    }

    pub fn to_json(&self) -> SemilatticeJson {
        SemilatticeJson {
            elements: self.labels.clone(),
            meet: self.meet_table(),
        }
    }

    pub fn from_json(json: &SemilatticeJson) -> Result<Self> {
        FinMeetSemilattice::new(json.elements.clone(), json.meet.clone())
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let json: SemilatticeJson = serde_json::from_str(text)?;
        FinMeetSemilattice::from_json(&json)
    }
}

/// On-disk semilattice format: labels plus a row-major meet table of indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilatticeJson {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
}

/// How a cover may relate to the element it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverRule {
    /// Every nonzero member must lie below `x`.
    #[default]
    BelowOnly,
    /// Members are arbitrary; only the meeting condition is checked.
    Unrestricted,
}

/// `Z` covers `x`: every nonzero `y ≤ x` meets some `z ∈ Z` nontrivially.
/// Zeros in `Z` are ignored; any other member not below `x` is rejected.
pub fn is_cover(e: &FinMeetSemilattice, x: Elem, z: Bits) -> Result<bool> {
    is_cover_with(e, x, z, CoverRule::BelowOnly)
}

pub fn is_cover_with(e: &FinMeetSemilattice, x: Elem, z: Bits, rule: CoverRule) -> Result<bool> {
    e.check(x)?;
    for m in z.iter() {
        e.check(m)?;
        if rule == CoverRule::BelowOnly && m != 0 && !e.le(m, x) {
            return Err(Error::Precondition(format!(
                "cover member {} is not below {}",
                e.label(m),
                e.label(x)
            )));
        }
    }
    Ok(covers(e, x, z))
}

fn covers(e: &FinMeetSemilattice, x: Elem, z: Bits) -> bool {
    e.down_set(x)
        .iter()
        .filter(|&y| y != 0)
        .all(|y| !(e.nonzero_meets(y) & z).is_empty())
}

/// `f` is dense in `e`: no nonzero `d ≤ e` is disjoint from `f`.
pub fn dense_in(e: &FinMeetSemilattice, f: Elem, x: Elem) -> Result<bool> {
    if !e.leq(f, x)? {
        return Err(Error::Precondition(format!(
            "{} is not below {}",
            e.label(f),
            e.label(x)
        )));
    }
    is_cover(e, x, Bits::single(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    gen: Elem,
}

impl Character {
    pub fn new(e: &FinMeetSemilattice, gen: Elem) -> Result<Self> {
        e.check(gen)?;
        if gen == 0 {
            return Err(Error::Precondition("a character generator must be nonzero".into()));
        }
        Ok(Character { gen })
    }

    pub fn gen(self) -> Elem {
        self.gen
    }

    pub fn eval(self, e: &FinMeetSemilattice, x: Elem) -> bool {
        e.le(self.gen, x)
    }
}

/// A set of characters, kept sorted by generator.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Spectrum {
    chars: Vec<Character>,
}

impl Spectrum {
    pub fn from_chars(mut chars: Vec<Character>) -> Self {
        chars.sort();
        chars.dedup();
        Spectrum { chars }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn gens(&self) -> Vec<Elem> {
        self.chars.iter().map(|c| c.gen).collect()
    }

    pub fn contains(&self, c: Character) -> bool {
        self.chars.binary_search(&c).is_ok()
    }

    pub fn contains_gen(&self, g: Elem) -> bool {
        g != 0 && self.contains(Character { gen: g })
    }

    pub fn position(&self, c: Character) -> Option<usize> {
        self.chars.binary_search(&c).ok()
    }

    pub fn is_subset(&self, other: &Spectrum) -> bool {
        self.chars.iter().all(|&c| other.contains(c))
    }
}

/// A pair `(e, {e_1, …, e_n})` requiring `φ(e) = ⋁ φ(e_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XRelation {
    pub e: Elem,
    pub parts: Bits,
}

impl XRelation {
    pub fn new(e: Elem, parts: impl IntoIterator<Item = Elem>) -> Self {
        XRelation {
            e,
            parts: parts.into_iter().collect(),
        }
    }

    pub fn display(&self, lat: &FinMeetSemilattice) -> String {
        let parts: Vec<&str> = self.parts.iter().map(|p| lat.label(p)).collect();
        format!("({}, {{{}}})", lat.label(self.e), parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XRelationJson {
    pub e: String,
    pub parts: Vec<String>,
}

pub fn relations_to_json(lat: &FinMeetSemilattice, xs: &[XRelation]) -> Vec<XRelationJson> {
    xs.iter()
        .map(|r| XRelationJson {
            e: lat.label(r.e).to_string(),
            parts: r.parts.iter().map(|p| lat.label(p).to_string()).collect(),
        })
        .collect()
}

pub fn relations_from_json(lat: &FinMeetSemilattice, json: &[XRelationJson]) -> Result<Vec<XRelation>> {
    json.iter()
        .map(|r| {
            let e = lat.index_of(&r.e)?;
            let parts = r.parts.iter().map(|p| lat.index_of(p)).collect::<Result<Vec<_>>>()?;
            Ok(XRelation::new(e, parts))
        })
        .collect()
}

/// Every character of `E`: one per nonzero element.
pub fn characters(e: &FinMeetSemilattice) -> Spectrum {
    Spectrum {
        chars: e.nonzero().map(|g| Character { gen: g }).collect(),
    }
}

/// `φ(e) = ⋁ φ(e_i)` evaluated in `{0, 1}`.
pub fn char_satisfies(e: &FinMeetSemilattice, c: Character, rel: &XRelation) -> bool {
    c.eval(e, rel.e) == rel.parts.iter().any(|p| c.eval(e, p))
}

/// The characters satisfying every relation in `xs`.
pub fn spectrum(e: &FinMeetSemilattice, xs: &[XRelation]) -> Spectrum {
    Spectrum {
        chars: characters(e)
            .chars
            .into_iter()
            .filter(|&c| xs.iter().all(|r| char_satisfies(e, c, r)))
            .collect(),
    }
}

/// Antichains inside `pool`, in a deterministic order.
fn antichains(e: &FinMeetSemilattice, pool: &[Elem]) -> Vec<Bits> {
    fn go(e: &FinMeetSemilattice, pool: &[Elem], i: usize, cur: Bits, out: &mut Vec<Bits>) {
        if i == pool.len() {
            out.push(cur);
            return;
        }
        go(e, pool, i + 1, cur, out);
        let p = pool[i];
        if cur.iter().all(|q| !e.le(p, q) && !e.le(q, p)) {
            go(e, pool, i + 1, cur.with(p), out);
        }
    }
    let mut out = Vec::new();
    go(e, pool, 0, Bits::EMPTY, &mut out);
    out
}

fn minimal_sets_below(e: &FinMeetSemilattice, x: Elem, property: impl Fn(Bits) -> bool) -> Vec<XRelation> {
    let pool: Vec<Elem> = e.down_set(x).iter().filter(|&y| y != 0).collect();
    let mut out: Vec<XRelation> = antichains(e, &pool)
        .into_iter()
        .filter(|&z| property(z) && z.iter().all(|m| !property(Bits(z.0 & !(1 << m)))))
        .map(|z| XRelation { e: x, parts: z })
        .collect();
    out.sort();
    out
}

fn collect_over_elements(
    e: &FinMeetSemilattice,
    exec: Exec,
    per: impl Fn(Elem) -> Vec<XRelation> + Sync + Send,
) -> Vec<XRelation> {
    let nonzero: Vec<Elem> = e.nonzero().collect();
    let mut out: Vec<XRelation> = exec.map(&nonzero, |&x| per(x)).into_iter().flatten().collect();
    out.sort();
    out
}

/// Inclusion-minimal covers `(x, Z)` with `Z ⊆ x↓ ∖ {0}`, `x ≠ 0`.
pub fn x_tight(e: &FinMeetSemilattice) -> Vec<XRelation> {
    x_tight_with(e, Exec::default())
}

pub fn x_tight_with(e: &FinMeetSemilattice, exec: Exec) -> Vec<XRelation> {
    collect_over_elements(e, exec, |x| minimal_sets_below(e, x, |z| covers(e, x, z)))
}

/// Every cover `(x, Z)` with `Z ⊆ x↓`, zeros allowed, `x = 0` included.
/// Exponential in `|x↓|`; this is the unreduced relation set that the
/// conjugation action maps into itself.
pub fn x_tight_all(e: &FinMeetSemilattice) -> Vec<XRelation> {
    let mut out = Vec::new();
    for x in 0..e.size() {
        for z in e.down_set(x).subsets() {
            if covers(e, x, z) {
                out.push(XRelation { e: x, parts: z });
            }
        }
    }
    out.sort();
    out
}

/// Inclusion-minimal covers `(x, Z)` of `x ≠ 0` whose join exists and equals `x`.
pub fn x_prime(e: &FinMeetSemilattice) -> Vec<XRelation> {
    collect_over_elements(e, Exec::default(), |x| {
        minimal_sets_below(e, x, |z| covers(e, x, z) && e.join_of(z) == Some(x))
    })
}

/// `(x, {f})` for every `x ≠ 0` and every `f` dense in `x`.
pub fn x_core(e: &FinMeetSemilattice) -> Vec<XRelation> {
    let mut out = Vec::new();
    for x in e.nonzero() {
        for f in e.down_set(x).iter() {
            if covers(e, x, Bits::single(f)) {
                out.push(XRelation::new(x, [f]));
            }
        }
    }
    out
}

/// The builtin relation-set generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    None,
    Tight,
    Prime,
    Core,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::None,
        RelationKind::Tight,
        RelationKind::Prime,
        RelationKind::Core,
    ];

    pub fn generate(self, e: &FinMeetSemilattice) -> Vec<XRelation> {
        match self {
            RelationKind::None => Vec::new(),
            RelationKind::Tight => x_tight(e),
            RelationKind::Prime => x_prime(e),
            RelationKind::Core => x_core(e),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::None => "none",
            RelationKind::Tight => "tight",
            RelationKind::Prime => "prime",
            RelationKind::Core => "core",
        }
    }
}

impl std::str::FromStr for RelationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "empty" => Ok(RelationKind::None),
            "tight" => Ok(RelationKind::Tight),
            "prime" => Ok(RelationKind::Prime),
            "core" => Ok(RelationKind::Core),
            other => Err(Error::Parse(format!("unknown relation kind `{other}`"))),
        }
    }
}
