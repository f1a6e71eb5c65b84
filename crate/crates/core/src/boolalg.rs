//! Finite Boolean algebras, representations of semilattices in them, and the
//! X-to-join Booleanization `B_X(E)`.
//!
//! A finite Boolean algebra is the powerset of its atoms; elements are
//! [`Bits`] over the atom list. `B_X(E)` has the X-to-join characters as
//! atoms, sorted by generator, and `ι(a) = {φ_g ∈ Ê_X : g ≤ a}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::exec::Exec;
use crate::semilattice::{self, Character, Elem, FinMeetSemilattice, Spectrum, XRelation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinBooleanAlgebra {
    atoms: Vec<String>,
}

impl FinBooleanAlgebra {
    pub fn new(atoms: Vec<String>) -> Result<Self> {
        Bits::check_capacity("boolean algebra atoms", atoms.len())?;
        Ok(FinBooleanAlgebra { atoms })
    }

    /// Atoms labelled `0..m`.
    pub fn with_atoms(m: usize) -> Self {
        FinBooleanAlgebra::new((0..m).map(|i| i.to_string()).collect()).expect("capacity")
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn top(&self) -> Bits {
        Bits::full(self.atoms.len())
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> u128 {
        1u128 << self.atoms.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Bits> {
        self.top().subsets()
    }

    pub fn contains(&self, b: Bits) -> bool {
        b.is_subset(self.top())
    }

    pub fn show(&self, b: Bits) -> String {
        let names: Vec<&str> = b.iter().map(|i| self.atoms[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Checks the distributive-lattice and relative-complement laws over
    /// every triple of elements.
    pub fn check_laws(&self) -> Result<()> {
        let els: Vec<Bits> = self.elements().collect();
        for &x in &els {
            for &y in &els {
                if x & y != y & x || x | y != y | x {
                    return Err(law("commutativity", self, &[x, y]));
                }
                if (x - y) & y != Bits::EMPTY || (x - y) | (x & y) != x {
                    return Err(law("relative complement", self, &[x, y]));
                }
                if x & (x | y) != x || x | (x & y) != x {
                    return Err(law("absorption", self, &[x, y]));
                }
                for &z in &els {
                    if x & (y | z) != (x & y) | (x & z) {
                        return Err(law("distributivity", self, &[x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }
}

fn law(name: &'static str, b: &FinBooleanAlgebra, xs: &[Bits]) -> Error {
    let w: Vec<String> = xs.iter().map(|&x| b.show(x)).collect();
    Error::LawViolated {
        law: name,
        witness: format!("({})", w.join(", ")),
    }
}

/// A representation `φ: E → B`: `φ(0) = ∅` and `φ(x ∧ y) = φ(x) ∩ φ(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeRep<'a> {
    domain: &'a FinMeetSemilattice,
    codomain: FinBooleanAlgebra,
    map: Vec<Bits>,
}

impl<'a> SemilatticeRep<'a> {
    pub fn new(domain: &'a FinMeetSemilattice, codomain: FinBooleanAlgebra, map: Vec<Bits>) -> Result<Self> {
        if map.len() != domain.size() {
            return Err(Error::MalformedTable(format!(
                "representation has {} images for {} elements",
                map.len(),
                domain.size()
            )));
        }
        if let Some(x) = (0..map.len()).find(|&x| !codomain.contains(map[x])) {
            return Err(Error::Precondition(format!(
                "image of {} leaves the codomain",
                domain.label(x)
            )));
        }
        if !map[0].is_empty() {
            return Err(Error::LawViolated {
                law: "φ(0) = 0",
                witness: codomain.show(map[0]),
            });
        }
        for x in 0..domain.size() {
            for y in 0..domain.size() {
                if map[domain.meet(x, y)] != map[x] & map[y] {
                    return Err(Error::LawViolated {
                        law: "φ(x∧y) = φ(x)∧φ(y)",
                        witness: format!("({}, {})", domain.label(x), domain.label(y)),
                    });
                }
            }
        }
        Ok(SemilatticeRep { domain, codomain, map })
    }

    pub fn domain(&self) -> &'a FinMeetSemilattice {
        self.domain
    }

    pub fn codomain(&self) -> &FinBooleanAlgebra {
        &self.codomain
    }

    pub fn image(&self, x: Elem) -> Bits {
        self.map[x]
    }

    pub fn images(&self) -> &[Bits] {
        &self.map
    }

    pub fn join_image(&self, parts: Bits) -> Bits {
        parts.iter().fold(Bits::EMPTY, |acc, p| acc | self.map[p])
    }

    pub fn is_injective(&self) -> bool {
        let set: HashSet<Bits> = self.map.iter().copied().collect();
        set.len() == self.map.len()
    }

    /// Parses `{"element": ["atom", …], …}`. Atoms are taken in sorted order
    /// unless `atoms` fixes them; unlisted elements map to `∅`.
    pub fn from_json(domain: &'a FinMeetSemilattice, json: &RepJson) -> Result<Self> {
        let atoms: Vec<String> = match &json.atoms {
            Some(a) => a.clone(),
            None => json
                .map
                .values()
                .flatten()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let codomain = FinBooleanAlgebra::new(atoms)?;
        let mut map = vec![Bits::EMPTY; domain.size()];
        for (label, image) in &json.map {
            let x = domain.index_of(label)?;
            for a in image {
                let i = codomain
                    .atoms()
                    .iter()
                    .position(|t| t == a)
                    .ok_or_else(|| Error::UnknownLabel(a.clone()))?;
                map[x].insert(i);
            }
        }
        SemilatticeRep::new(domain, codomain, map)
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            atoms: Some(self.codomain.atoms.clone()),
            map: (0..self.domain.size())
                .map(|x| {
                    let img = self.map[x].iter().map(|i| self.codomain.atoms[i].clone()).collect();
                    (self.domain.label(x).to_string(), img)
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<String>>,
    #[serde(flatten)]
    pub map: BTreeMap<String, Vec<String>>,
}

/// Images jointly exhaust the codomain.
pub fn is_proper(rep: &SemilatticeRep) -> bool {
    rep.join_image(Bits::full(rep.domain.size())) == rep.codomain.top()
}

/// First relation of `xs` that `rep` fails, if any.
pub fn violated_relation(rep: &SemilatticeRep, xs: &[XRelation]) -> Option<XRelation> {
    xs.iter().copied().find(|r| rep.image(r.e) != rep.join_image(r.parts))
}

pub fn is_x_to_join(rep: &SemilatticeRep, xs: &[XRelation]) -> bool {
    is_proper(rep) && violated_relation(rep, xs).is_none()
}

pub fn is_tight(rep: &SemilatticeRep) -> bool {
    is_x_to_join(rep, &semilattice::x_tight(rep.domain))
}

pub fn is_prime(rep: &SemilatticeRep) -> bool {
    is_x_to_join(rep, &semilattice::x_prime(rep.domain))
}

pub fn is_core(rep: &SemilatticeRep) -> bool {
    is_x_to_join(rep, &semilattice::x_core(rep.domain))
}

/// Proper and join-preserving. The domain must be a lattice.
pub fn is_lattice_morphism(rep: &SemilatticeRep) -> Result<bool> {
    let e = rep.domain;
    if !e.is_lattice() {
        return Err(Error::MissingStructure("domain is not a lattice".into()));
    }
    let joins = (0..e.size())
        .all(|x| (0..e.size()).all(|y| rep.image(e.join(x, y).expect("lattice")) == rep.image(x) | rep.image(y)));
    Ok(is_proper(rep) && joins)
}

/// Proper and preserving `0, ∨, ∧, ∖`. The domain must be a Boolean algebra.
pub fn is_ba_morphism(rep: &SemilatticeRep) -> Result<bool> {
    let e = rep.domain;
    if !e.is_boolean() {
        return Err(Error::MissingStructure("domain is not a Boolean algebra".into()));
    }
    let n = e.size();
    let ops = (0..n).all(|x| {
        (0..n).all(|y| {
            let j = e.join(x, y).expect("boolean");
            let d = e.relative_complement(x, y).expect("boolean");
            rep.image(j) == rep.image(x) | rep.image(y) && rep.image(d) == rep.image(x) - rep.image(y)
        })
    });
    Ok(is_proper(rep) && ops)
}

/// `B_X(E)` together with its canonical representation.
#[derive(Debug, Clone)]
pub struct Booleanization<'a> {
    pub spectrum: Spectrum,
    pub iota: SemilatticeRep<'a>,
}

impl<'a> Booleanization<'a> {
    pub fn algebra(&self) -> &FinBooleanAlgebra {
        self.iota.codomain()
    }

    /// Index of the atom `{φ}`.
    pub fn atom_of(&self, c: Character) -> Option<usize> {
        self.spectrum.position(c)
    }
}

pub fn booleanization<'a>(e: &'a FinMeetSemilattice, xs: &[XRelation]) -> Result<Booleanization<'a>> {
    let spectrum = semilattice::spectrum(e, xs);
    booleanization_over(e, spectrum)
}

/// The Booleanization whose atoms are the given characters.
pub fn booleanization_over(e: &FinMeetSemilattice, spectrum: Spectrum) -> Result<Booleanization<'_>> {
    let atoms = spectrum
        .chars()
        .iter()
        .map(|c| format!("φ[{}]", e.label(c.gen())))
        .collect();
    let algebra = FinBooleanAlgebra::new(atoms)?;
    let map = (0..e.size())
        .map(|a| {
            spectrum
                .chars()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.eval(e, a))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let iota = SemilatticeRep::new(e, algebra, map)?;
    Ok(Booleanization { spectrum, iota })
}

/// `M_{a; b_1, …, b_k} ∩ Ê_X` as an atom set of `B_X(E)`.
pub fn basic_set(e: &FinMeetSemilattice, xs: &[XRelation], a: Elem, excl: Bits) -> Result<Bits> {
    e.check(a)?;
    for b in excl.iter() {
        if !e.leq(b, a)? {
            return Err(Error::Precondition(format!(
                "excluded {} is not below {}",
                e.label(b),
                e.label(a)
            )));
        }
    }
    let sp = semilattice::spectrum(e, xs);
    Ok(sp
        .chars()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.eval(e, a) && excl.iter().all(|b| !c.eval(e, b)))
        .map(|(i, _)| i)
        .collect())
}

/// A morphism of finite Boolean algebras, determined by its atom images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BAMorphism {
    pub source: FinBooleanAlgebra,
    pub target: FinBooleanAlgebra,
    pub atom_image: Vec<Bits>,
}

impl BAMorphism {
    pub fn apply(&self, b: Bits) -> Bits {
        b.iter().fold(Bits::EMPTY, |acc, i| acc | self.atom_image[i])
    }

    /// `0, ∨, ∧, ∖` are preserved. Checked over every pair for small sources,
    /// otherwise through pairwise disjointness of atom images (equivalent).
    pub fn preserves_operations(&self) -> bool {
        let k = self.source.atom_count();
        if k <= 8 {
            let els: Vec<Bits> = self.source.elements().collect();
            self.apply(Bits::EMPTY).is_empty()
                && els.iter().all(|&x| {
                    els.iter().all(|&y| {
                        self.apply(x | y) == self.apply(x) | self.apply(y)
                            && self.apply(x & y) == self.apply(x) & self.apply(y)
                            && self.apply(x - y) == self.apply(x) - self.apply(y)
                    })
                })
        } else {
            (0..k).all(|i| (i + 1..k).all(|j| self.atom_image[i].is_disjoint(self.atom_image[j])))
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.preserves_operations()
            && self.atom_image.iter().all(|a| a.len() == 1)
            && self.apply(self.source.top()) == self.target.top()
    }
}

/// How uniqueness of a universal arrow was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    /// Every candidate morphism was enumerated; `matches` satisfied the
    /// factorisation.
    Exhaustive { candidates: u64, matches: u64 },
    /// The target was too large to enumerate; the arrow is forced on the
    /// generating image.
    GeneratorDeterminacy,
}

impl Uniqueness {
    pub fn is_unique(self) -> bool {
        match self {
            Uniqueness::Exhaustive { matches, .. } => matches == 1,
            Uniqueness::GeneratorDeterminacy => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UniversalExtension<'a> {
    pub booleanization: Booleanization<'a>,
    pub morphism: BAMorphism,
    pub uniqueness: Uniqueness,
}

const EXHAUSTIVE_TARGET_ATOMS: usize = 4;

/// The unique `ψ: B_X(E) → B` with `φ = ψ ∘ ι`.
///
/// On the atom `{φ_g}` it is `φ(g) ∖ ⋁ φ(b)` over the maximal `b < g`.
pub fn universal_extension<'a>(rep: &SemilatticeRep<'a>, xs: &[XRelation]) -> Result<UniversalExtension<'a>> {
    if !is_proper(rep) {
        return Err(Error::Precondition("representation is not proper".into()));
    }
    if let Some(r) = violated_relation(rep, xs) {
        return Err(Error::Precondition(format!(
            "representation fails relation {}",
            r.display(rep.domain)
        )));
    }
    let e = rep.domain;
    let bx = booleanization(e, xs)?;
    let atom_image: Vec<Bits> = bx
        .spectrum
        .chars()
        .iter()
        .map(|c| {
            let g = c.gen();
            let strictly_below = e.down_set(g) - Bits::single(g);
            let maximal: Bits = strictly_below
                .iter()
                .filter(|&b| strictly_below.iter().all(|b2| b2 == b || !e.le(b, b2)))
                .collect();
            rep.image(g) - rep.join_image(maximal)
        })
        .collect();
    let morphism = BAMorphism {
        source: bx.algebra().clone(),
        target: rep.codomain().clone(),
        atom_image,
    };
    if !morphism.preserves_operations() {
        return Err(Error::Integrity(
            "extension fails to be a Boolean algebra morphism".into(),
        ));
    }
    if let Some(x) = (0..e.size()).find(|&x| morphism.apply(bx.iota.image(x)) != rep.image(x)) {
        return Err(Error::Integrity(format!("ψ∘ι differs from φ at {}", e.label(x))));
    }
    let uniqueness = if rep.codomain().atom_count() <= EXHAUSTIVE_TARGET_ATOMS {
        count_factorisations(&bx.iota, rep)
    } else {
        Uniqueness::GeneratorDeterminacy
    };
    Ok(UniversalExtension {
        booleanization: bx,
        morphism,
        uniqueness,
    })
}

/// Enumerates every morphism `P(k) → P(m)` (a map sending each target atom to
/// at most one source atom) and counts those with `ψ ∘ ι = φ`.
fn count_factorisations(iota: &SemilatticeRep, rep: &SemilatticeRep) -> Uniqueness {
    let k = iota.codomain().atom_count();
    let m = rep.codomain().atom_count();
    let mut candidates = 0u64;
    let mut matches = 0u64;
    let mut choice = vec![0usize; m]; // 0 = unused, i+1 = source atom i
    loop {
        let mut atom_image = vec![Bits::EMPTY; k];
        for (t, &c) in choice.iter().enumerate() {
            if c > 0 {
                atom_image[c - 1].insert(t);
            }
        }
        let psi = |b: Bits| b.iter().fold(Bits::EMPTY, |acc, i| acc | atom_image[i]);
        candidates += 1;
        if (0..iota.domain().size()).all(|x| psi(iota.image(x)) == rep.image(x)) {
            matches += 1;
        }
        // odometer increment in base k+1
        let mut i = 0;
        loop {
            if i == m {
                return Uniqueness::Exhaustive { candidates, matches };
            }
            choice[i] += 1;
            if choice[i] <= k {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All `(e, P)` with `|P| ≤ max_size` and `π(e) = ⋁ π(P)`.
pub fn x_pi(rep: &SemilatticeRep, max_size: usize) -> Vec<XRelation> {
    x_pi_with(rep, max_size, Exec::default())
}

pub fn x_pi_with(rep: &SemilatticeRep, max_size: usize, exec: Exec) -> Vec<XRelation> {
    let n = rep.domain.size();
    let subsets: Vec<Bits> = Bits::full(n).subsets().filter(|s| s.len() <= max_size).collect();
    let joins: Vec<Bits> = exec.map(&subsets, |&s| rep.join_image(s));
    let mut out: Vec<XRelation> = exec
        .map_range(n, |e| {
            subsets
                .iter()
                .zip(&joins)
                .filter(|(_, &j)| j == rep.image(e))
                .map(|(&parts, _)| XRelation { e, parts })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out
}

/// Closure of `gens ∪ {∅}` under `∪, ∩, ∖`.
pub fn generated_subalgebra(gens: &[Bits]) -> Vec<Bits> {
    let mut set: BTreeSet<Bits> = gens.iter().copied().collect();
    set.insert(Bits::EMPTY);
    loop {
        let cur: Vec<Bits> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            for &b in &cur {
                set.insert(a | b);
                set.insert(a & b);
                set.insert(a - b);
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

pub fn generates(rep: &SemilatticeRep) -> bool {
    let m = rep.codomain().atom_count();
    generated_subalgebra(rep.images()).len() as u128 == 1u128 << m
}

/// `B ≅ B_{X_π}(E)` for a representation whose image generates `B`.
pub fn theorem_isom_check(rep: &SemilatticeRep) -> Result<bool> {
    if !generates(rep) {
        return Err(Error::Precondition("image does not generate the codomain".into()));
    }
    let xs = x_pi(rep, rep.domain.size());
    let ext = universal_extension(rep, &xs)?;
    Ok(ext.morphism.is_bijective())
}

/// Every representation of `e` into the powerset of `m` atoms.
pub fn representations(e: &FinMeetSemilattice, m: usize) -> Vec<SemilatticeRep<'_>> {
    let codomain = FinBooleanAlgebra::with_atoms(m);
    let choices: Vec<Bits> = codomain.elements().collect();
    let n = e.size();
    let mut out = Vec::new();
    let mut map = vec![Bits::EMPTY; n];
    fn go(e: &FinMeetSemilattice, x: usize, map: &mut Vec<Bits>, choices: &[Bits], out: &mut Vec<Vec<Bits>>) {
        if x == e.size() {
            out.push(map.clone());
            return;
        }
        for &c in choices {
            map[x] = c;
            let ok = (0..=x).all(|y| {
                let m = e.meet(x, y);
                m > x || map[m] == map[x] & map[y]
            });
            if ok {
                go(e, x + 1, map, choices, out);
            }
        }
    }
    let mut maps = Vec::new();
    go(e, 1, &mut map, &choices, &mut maps);
    for m in maps {
        if let Ok(r) = SemilatticeRep::new(e, codomain.clone(), m) {
            out.push(r);
        }
    }
    out
}
