//! Finite groupoids and the groupoid of germs `G_X(S)` of the natural action
//! restricted to the `X′`-spectrum.
//!
//! In the finite case every character is `φ_f` for an idempotent `f`, and
//! `[s, φ_f] = [t, φ_f]` iff `sf = tf`. A germ is therefore stored as the
//! element `a = sf`, which satisfies `d(a) = f`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::invsgp::{FinInverseSemigroup, SElem};
use crate::semilattice::{Character, Spectrum, XRelation};
use crate::{Error, Result};

pub type Unit = usize;
pub type Arrow = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    unit_labels: Vec<String>,
    arrow_labels: Vec<String>,
    src: Vec<Unit>,
    rng: Vec<Unit>,
    inv: Vec<Arrow>,
    unit_arrow: Vec<Arrow>,
    comp: Vec<Option<Arrow>>,
}

impl FinGroupoid {
    /// `comp(a, b)` is `Some(ab)` exactly when `src(a) = rng(b)`.
    pub fn new(
        unit_labels: Vec<String>,
        arrow_labels: Vec<String>,
        src: Vec<Unit>,
        rng: Vec<Unit>,
        comp: impl Fn(Arrow, Arrow) -> Option<Arrow>,
    ) -> Result<Self> {
        let m = arrow_labels.len();
        let k = unit_labels.len();
        if src.len() != m || rng.len() != m {
            return Err(Error::MalformedTable("src/rng must list every arrow".into()));
        }
        if let Some(&u) = src.iter().chain(&rng).find(|&&u| u >= k) {
            return Err(Error::IndexOutOfRange { index: u, size: k });
        }
        let mut table = vec![None; m * m];
        for a in 0..m {
            for b in 0..m {
                let c = comp(a, b);
                let composable = src[a] == rng[b];
                match c {
                    Some(c) if c >= m => return Err(Error::IndexOutOfRange { index: c, size: m }),
                    Some(c) if !composable || src[c] != src[b] || rng[c] != rng[a] => {
                        return Err(Error::LawViolated {
                            law: "composition respects src/rng",
                            witness: format!("({}, {})", arrow_labels[a], arrow_labels[b]),
                        })
                    }
                    None if composable => {
                        return Err(Error::LawViolated {
                            law: "composable pairs compose",
                            witness: format!("({}, {})", arrow_labels[a], arrow_labels[b]),
                        })
                    }
                    _ => {}
                }
                table[a * m + b] = c;
            }
        }
        let c = |a: Arrow, b: Arrow| table[a * m + b];
        for a in 0..m {
            for b in 0..m {
                let Some(ab) = c(a, b) else { continue };
                for d in 0..m {
                    if let Some(bd) = c(b, d) {
                        if c(ab, d) != c(a, bd) {
                            return Err(Error::LawViolated {
                                law: "associativity",
                                witness: format!("({}, {}, {})", arrow_labels[a], arrow_labels[b], arrow_labels[d]),
                            });
                        }
                    }
                }
            }
        }
        let mut unit_arrow = vec![usize::MAX; k];
        for u in 0..k {
            let found = (0..m).find(|&i| {
                src[i] == u
                    && rng[i] == u
                    && (0..m).all(|a| (src[a] != u || c(a, i) == Some(a)) && (rng[a] != u || c(i, a) == Some(a)))
            });
            match found {
                Some(i) => unit_arrow[u] = i,
                None => {
                    return Err(Error::LawViolated {
                        law: "identity arrow",
                        witness: unit_labels[u].clone(),
                    })
                }
            }
        }
        let mut inv = vec![0; m];
        for a in 0..m {
            let found = (0..m).find(|&b| c(a, b) == Some(unit_arrow[rng[a]]) && c(b, a) == Some(unit_arrow[src[a]]));
            match found {
                Some(b) => inv[a] = b,
                None => {
                    return Err(Error::LawViolated {
                        law: "inverse arrow",
                        witness: arrow_labels[a].clone(),
                    })
                }
            }
        }
        Ok(FinGroupoid {
            unit_labels,
            arrow_labels,
            src,
            rng,
            inv,
            unit_arrow,
            comp: table,
        })
    }

    pub fn unit_count(&self) -> usize {
        self.unit_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_labels.len()
    }

    pub fn unit_label(&self, u: Unit) -> &str {
        &self.unit_labels[u]
    }

    pub fn arrow_label(&self, a: Arrow) -> &str {
        &self.arrow_labels[a]
    }

    pub fn src(&self, a: Arrow) -> Unit {
        self.src[a]
    }

    pub fn rng(&self, a: Arrow) -> Unit {
        self.rng[a]
    }

    pub fn inv(&self, a: Arrow) -> Arrow {
        self.inv[a]
    }

    pub fn unit_arrow(&self, u: Unit) -> Arrow {
        self.unit_arrow[u]
    }

    pub fn is_unit_arrow(&self, a: Arrow) -> bool {
        self.unit_arrow[self.src[a]] == a
    }

    pub fn comp(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        self.comp[a * self.arrow_count() + b]
    }

    /// The full subgroupoid on the given units. Returns it with, for each
    /// kept arrow, its index in `self`.
    pub fn restrict(&self, units: &[Unit]) -> Result<(FinGroupoid, Vec<Arrow>)> {
        let mut new_unit = vec![None; self.unit_count()];
        for (i, &u) in units.iter().enumerate() {
            if u >= self.unit_count() {
                return Err(Error::IndexOutOfRange {
                    index: u,
                    size: self.unit_count(),
                });
            }
            new_unit[u] = Some(i);
        }
        let kept: Vec<Arrow> = (0..self.arrow_count())
            .filter(|&a| new_unit[self.src[a]].is_some() && new_unit[self.rng[a]].is_some())
            .collect();
        let pos: HashMap<Arrow, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let g = FinGroupoid::new(
            units.iter().map(|&u| self.unit_labels[u].clone()).collect(),
            kept.iter().map(|&a| self.arrow_labels[a].clone()).collect(),
            kept.iter().map(|&a| new_unit[self.src[a]].unwrap()).collect(),
            kept.iter().map(|&a| new_unit[self.rng[a]].unwrap()).collect(),
            |x, y| self.comp(kept[x], kept[y]).map(|c| pos[&c]),
        )?;
        Ok((g, kept))
    }

    pub fn to_json(&self) -> GroupoidJson {
        let mut compositions = Vec::new();
        for a in 0..self.arrow_count() {
            for b in 0..self.arrow_count() {
                if let Some(c) = self.comp(a, b) {
                    compositions.push([a, b, c].map(|x| self.arrow_labels[x].clone()));
                }
            }
        }
        GroupoidJson {
            units: self.unit_labels.clone(),
            arrows: (0..self.arrow_count())
                .map(|a| ArrowJson {
                    label: self.arrow_labels[a].clone(),
                    src: self.unit_labels[self.src[a]].clone(),
                    rng: self.unit_labels[self.rng[a]].clone(),
                    inverse: self.arrow_labels[self.inv[a]].clone(),
                })
                .collect(),
            compositions,
        }
    }

    pub fn from_json(json: &GroupoidJson) -> Result<Self> {
        let unit = |l: &str| {
            json.units
                .iter()
                .position(|u| u == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let arrow_labels: Vec<String> = json.arrows.iter().map(|a| a.label.clone()).collect();
        let arrow = |l: &str| {
            arrow_labels
                .iter()
                .position(|u| u == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let src = json.arrows.iter().map(|a| unit(&a.src)).collect::<Result<Vec<_>>>()?;
        let rng = json.arrows.iter().map(|a| unit(&a.rng)).collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for [a, b, c] in &json.compositions {
            table.insert((arrow(a)?, arrow(b)?), arrow(c)?);
        }
        FinGroupoid::new(json.units.clone(), arrow_labels, src, rng, |a, b| {
            table.get(&(a, b)).copied()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub src: String,
    pub rng: String,
    pub inverse: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub units: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub compositions: Vec<[String; 3]>,
}

/// `[rep, base]` with `d(rep) = gen(base)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    pub rep: SElem,
    pub base: Character,
}

/// `[s, φ]` in normal form.
pub fn germ_of(s: &FinInverseSemigroup, a: SElem, c: Character) -> Result<Germ> {
    s.check(a)?;
    let f = s.from_e(c.gen());
    if !s.natural_leq(f, s.d(a)) {
        return Err(Error::Precondition(format!(
            "{} is outside the domain of {}",
            s.semilattice().label(c.gen()),
            s.label(a)
        )));
    }
    Ok(Germ {
        rep: s.mul(a, f),
        base: c,
    })
}

/// `G_X(S)` with the bookkeeping linking arrows to elements of `S`.
#[derive(Debug, Clone)]
pub struct GermGroupoid {
    sgp: FinInverseSemigroup,
    closed: Vec<XRelation>,
    spectrum: Spectrum,
    groupoid: FinGroupoid,
    germs: Vec<Germ>,
    arrow_of: Vec<Option<Arrow>>,
}

/// Builds `G_X(S)`; `X` is closed under conjugation first.
pub fn germ_groupoid(s: &FinInverseSemigroup, xs: &[XRelation]) -> Result<GermGroupoid> {
    let closed = s.invariant_closure(xs);
    let spectrum = crate::semilattice::spectrum(s.semilattice(), &closed);
    germ_groupoid_over(s, spectrum, closed)
}

/// The restriction of the universal groupoid to an invariant character set.
pub fn germ_groupoid_on(s: &FinInverseSemigroup, spectrum: Spectrum) -> Result<GermGroupoid> {
    if !s.is_invariant_spectrum(&spectrum) {
        return Err(Error::Precondition("character set is not invariant".into()));
    }
    germ_groupoid_over(s, spectrum, Vec::new())
}

fn germ_groupoid_over(s: &FinInverseSemigroup, spectrum: Spectrum, closed: Vec<XRelation>) -> Result<GermGroupoid> {
    let e = s.semilattice();
    let unit_of = |a: SElem| -> Option<Unit> {
        let c = Character::new(e, s.e_of(a)).ok()?;
        spectrum.position(c)
    };
    let reps: Vec<SElem> = (1..s.size()).filter(|&a| unit_of(s.d(a)).is_some()).collect();
    let mut arrow_of = vec![None; s.size()];
    for (i, &a) in reps.iter().enumerate() {
        arrow_of[a] = Some(i);
    }
    let mut src = Vec::with_capacity(reps.len());
    let mut rng = Vec::with_capacity(reps.len());
    for &a in &reps {
        src.push(unit_of(s.d(a)).expect("filtered"));
        rng.push(
            unit_of(s.r(a))
                .ok_or_else(|| Error::Integrity(format!("range of germ {} leaves the spectrum", s.label(a))))?,
        );
    }
    let unit_labels = spectrum
        .chars()
        .iter()
        .map(|c| format!("φ[{}]", e.label(c.gen())))
        .collect();
    let arrow_labels = reps.iter().map(|&a| s.label(a).to_string()).collect();
    let groupoid = FinGroupoid::new(unit_labels, arrow_labels, src, rng, |x, y| {
        let (a, b) = (reps[x], reps[y]);
        if s.d(a) == s.r(b) {
            arrow_of[s.mul(a, b)]
        } else {
            None
        }
    })?;
    let germs = reps
        .iter()
        .map(|&a| Germ {
            rep: a,
            base: Character::new(e, s.e_of(s.d(a))).expect("nonzero"),
        })
        .collect();
    Ok(GermGroupoid {
        sgp: s.clone(),
        closed,
        spectrum,
        groupoid,
        germs,
        arrow_of,
    })
}

impl GermGroupoid {
    pub fn semigroup(&self) -> &FinInverseSemigroup {
        &self.sgp
    }

    pub fn groupoid(&self) -> &FinGroupoid {
        &self.groupoid
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `X′`, empty when built directly from a character set.
    pub fn closed_relations(&self) -> &[XRelation] {
        &self.closed
    }

    pub fn germ(&self, a: Arrow) -> Germ {
        self.germs[a]
    }

    /// The arrow whose canonical representative is `rep`.
    pub fn arrow_of_rep(&self, rep: SElem) -> Option<Arrow> {
        self.arrow_of.get(rep).copied().flatten()
    }

    pub fn arrow_of(&self, g: Germ) -> Option<Arrow> {
        let a = self.arrow_of_rep(g.rep)?;
        (self.germs[a].base == g.base).then_some(a)
    }

    pub fn unit_of(&self, c: Character) -> Option<Unit> {
        self.spectrum.position(c)
    }

    /// `Θ[s; s_1, …, s_n] ∩ G_X(S)` as an arrow set.
    pub fn theta(&self, s: SElem, excl: &[SElem]) -> Result<Bits> {
        self.sgp.check(s)?;
        for &t in excl {
            self.sgp.check(t)?;
            if !self.sgp.natural_leq(t, s) {
                return Err(Error::Precondition(format!(
                    "{} is not below {}",
                    self.sgp.label(t),
                    self.sgp.label(s)
                )));
            }
        }
        Bits::check_capacity("groupoid arrows", self.groupoid.arrow_count())?;
        let e = self.sgp.semilattice();
        let ds = self.sgp.e_of(self.sgp.d(s));
        let mut out = Bits::EMPTY;
        for &c in self.spectrum.chars() {
            if !c.eval(e, ds) || excl.iter().any(|&t| c.eval(e, self.sgp.e_of(self.sgp.d(t)))) {
                continue;
            }
            let g = germ_of(&self.sgp, s, c)?;
            let a = self
                .arrow_of(g)
                .ok_or_else(|| Error::Integrity(format!("germ of {} is missing", self.sgp.label(s))))?;
            out.insert(a);
        }
        Ok(out)
    }
}

/// `src` and `rng` are injective on `a`.
pub fn is_local_bisection(g: &FinGroupoid, a: Bits) -> bool {
    let mut s = Bits::EMPTY;
    let mut r = Bits::EMPTY;
    for x in a.iter() {
        if s.contains(g.src(x)) || r.contains(g.rng(x)) {
            return false;
        }
        s.insert(g.src(x));
        r.insert(g.rng(x));
    }
    true
}
