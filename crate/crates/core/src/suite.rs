//! Invariant suites over small named and seeded instances.

use serde::Serialize;

use crate::bis::{self, check_variety_identities};
use crate::boolalg::{self, booleanization};
use crate::germoid::{germ_groupoid, is_local_bisection};
use crate::invsgp::FinInverseSemigroup;
use crate::lcmhull::{self, check_hull_laws, FreeMonoid, NRtimesNx, NatPow, RightLcmMonoid, ZappaSzepData};
use crate::semilattice::{self, characters, spectrum, x_tight, Character, FinMeetSemilattice, RelationKind, Spectrum};
use crate::{gen, Exec, Result};

pub const SUITES: [&str; 6] = ["semilattice", "boolalg", "invsgp", "germoid", "bis", "lcmhull"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub witness: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Named semilattices and seeded random ones, all with at most `max_size`
/// elements.
pub fn semilattices(max_size: usize) -> Result<Vec<(String, FinMeetSemilattice)>> {
    let mut out: Vec<(String, FinMeetSemilattice)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("chain{n}"), FinMeetSemilattice::chain(n)));
    }
    out.push(("diamond".into(), FinMeetSemilattice::diamond()));
    for k in 2..=3 {
        out.push((format!("antichain{k}"), FinMeetSemilattice::antichain(k)));
        out.push((format!("boolean{k}"), FinMeetSemilattice::boolean(k)));
    }
    for (i, l) in gen::random_semilattices(0x5171, 20, max_size.max(1))?
        .into_iter()
        .enumerate()
    {
        out.push((format!("random{i}"), l));
    }
    out.retain(|(_, l)| l.size() <= max_size);
    Ok(out)
}

pub fn semigroups(max_size: usize) -> Result<Vec<(String, FinInverseSemigroup)>> {
    let out = vec![
        ("I1".to_string(), FinInverseSemigroup::symmetric_inverse_monoid(1)?),
        ("I2".into(), FinInverseSemigroup::symmetric_inverse_monoid(2)?),
        ("B2".into(), FinInverseSemigroup::brandt(2)?),
        ("Z2⁰".into(), FinInverseSemigroup::cyclic_group_with_zero(2)?),
        ("Z3⁰".into(), FinInverseSemigroup::cyclic_group_with_zero(3)?),
        (
            "E3".into(),
            FinInverseSemigroup::from_semilattice(&FinMeetSemilattice::chain(2))?,
        ),
    ];
    Ok(out.into_iter().filter(|(_, s)| s.size() <= max_size).collect())
}

struct Tally {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            witness: None,
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

fn atom_spectrum(e: &FinMeetSemilattice) -> Spectrum {
    Spectrum::from_chars(
        e.atoms()
            .into_iter()
            .map(|g| Character::new(e, g).expect("atoms are nonzero"))
            .collect(),
    )
}

fn suite_semilattice(max_size: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("semilattice");
    for (name, e) in semilattices(max_size)? {
        let tight = spectrum(&e, &x_tight(&e));
        t.check(tight == atom_spectrum(&e), || {
            format!("{name}: tight spectrum is not the atoms")
        });
        let all = characters(&e);
        for kind in RelationKind::ALL {
            let s = spectrum(&e, &kind.generate(&e));
            t.check(tight.is_subset(&s) && s.is_subset(&all), || {
                format!("{name}: {} spectrum out of order", kind.name())
            });
        }
        t.check(spectrum(&e, &semilattice::x_tight_all(&e)) == tight, || {
            format!("{name}: all covers and minimal covers cut out different spectra")
        });
    }
    Ok(t.done())
}

fn suite_boolalg(max_size: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("boolalg");
    for (name, e) in semilattices(max_size.min(8))? {
        for kind in [RelationKind::None, RelationKind::Tight, RelationKind::Prime] {
            let xs = kind.generate(&e);
            let bx = booleanization(&e, &xs)?;
            t.check(bx.algebra().size() == 1u128 << bx.spectrum.len(), || {
                format!("{name}/{}: algebra size is not 2^|spectrum|", kind.name())
            });
            t.check(
                boolalg::is_x_to_join(&bx.iota, &xs) && boolalg::generates(&bx.iota),
                || {
                    format!(
                        "{name}/{}: ι is not an X-to-join generating representation",
                        kind.name()
                    )
                },
            );
            let ext = boolalg::universal_extension(&bx.iota, &xs)?;
            t.check(
                ext.morphism.is_bijective() && ext.morphism.preserves_operations(),
                || format!("{name}/{}: ι extends to a non-isomorphism of B_X(E)", kind.name()),
            );
        }
        if e.size() <= 5 && e.is_lattice() && e.is_distributive() {
            for rep in boolalg::representations(&e, 2).iter().filter(|r| boolalg::is_proper(r)) {
                if e.is_boolean() {
                    t.check(boolalg::is_tight(rep) == boolalg::is_ba_morphism(rep)?, || {
                        format!("{name}: tightness differs from being a morphism at {:?}", rep.images())
                    });
                }
                t.check(boolalg::is_prime(rep) == boolalg::is_lattice_morphism(rep)?, || {
                    format!(
                        "{name}: primeness differs from being a lattice morphism at {:?}",
                        rep.images()
                    )
                });
            }
        }
    }
    Ok(t.done())
}

fn suite_invsgp(max_size: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("invsgp");
    for (name, s) in semigroups(max_size)? {
        let e = s.semilattice();
        let xs = x_tight(e);
        let closed = s.invariant_closure(&xs);
        t.check(s.invariant_closure(&closed) == closed, || {
            format!("{name}: closure is not idempotent")
        });
        t.check(s.spectrum_invariant(&xs), || {
            format!("{name}: X′ spectrum is not invariant")
        });
        t.check(spectrum(e, &closed) == spectrum(e, &xs), || {
            format!("{name}: closing the tight relations changed the spectrum")
        });
        for a in 0..s.size() {
            let b = s.inv(a);
            t.check(s.mul(s.mul(a, b), a) == a && s.d(a) == s.mul(b, a), || {
                format!("{name}: inverse laws fail at {}", s.label(a))
            });
        }
        for sp in s.invariant_spectra()? {
            t.check(s.is_invariant_spectrum(&sp), || {
                format!("{name}: listed spectrum is not invariant")
            });
        }
    }
    Ok(t.done())
}

fn suite_germoid(max_size: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("germoid");
    for (name, s) in semigroups(max_size)? {
        for kind in RelationKind::ALL {
            let g = germ_groupoid(&s, &kind.generate(s.semilattice()))?;
            t.check(g.groupoid().unit_count() == g.spectrum().len(), || {
                format!("{name}/{}: unit count differs from the spectrum", kind.name())
            });
            for a in 0..s.size() {
                let th = g.theta(a, &[])?;
                t.check(is_local_bisection(g.groupoid(), th), || {
                    format!("{name}/{}: Θ[{}] is not a bisection", kind.name(), s.label(a))
                });
            }
        }
    }
    Ok(t.done())
}

fn suite_bis(max_size: usize, exec: Exec) -> Result<SuiteOutcome> {
    let mut t = Tally::new("bis");
    for (name, s) in semigroups(max_size)? {
        for kind in [RelationKind::None, RelationKind::Tight, RelationKind::Prime] {
            let xs = kind.generate(s.semilattice());
            let b = bis::iota(&s, &xs)?;
            let report = check_variety_identities(&b.algebra, 1 << 20, exec);
            t.check(report.all_hold(), || {
                let w = report
                    .verdicts
                    .iter()
                    .find_map(|v| v.witness.clone())
                    .unwrap_or_default();
                format!("{name}/{}: {w}", kind.name())
            });
            let pres = bis::check_presentation(&s, &xs)?;
            t.check(pres.passes(), || {
                format!("{name}/{}: presentation check fails", kind.name())
            });
        }
        for chi in s.invariant_spectra()? {
            let r = bis::theorem_quotients_check(&s, &chi)?;
            t.check(r.passes(), || {
                format!(
                    "{name}: quotient check fails: {}",
                    r.witness.clone().unwrap_or_default()
                )
            });
        }
    }
    Ok(t.done())
}

fn suite_lcmhull(exec: Exec) -> Result<SuiteOutcome> {
    let mut t = Tally::new("lcmhull");
    let mut law = |name: &str, r: lcmhull::HullLawReport| {
        t.check(r.witness.is_none(), || {
            format!("{name}: {}", r.witness.clone().unwrap_or_default())
        });
    };
    law("free:2", check_hull_laws(&FreeMonoid::new(2)?, 3, exec)?);
    law("nat:2", check_hull_laws(&NatPow::new(2), 3, exec)?);
    law("nxn", check_hull_laws(&NRtimesNx, 3, exec)?);
    let (zs, _) = lcmhull::zappa_szep(ZappaSzepData::adding_machine(), 4)?;
    law("adding-machine", check_hull_laws(&zs, 2, exec)?);
    let f = FreeMonoid::new(2)?;
    for set in f.enumerate(2).chunks(3) {
        let r = lcmhull::lemma_found_check(&f, set, 4)?;
        t.check(r.agree, || format!("free:2: foundation and cover disagree on {set:?}"));
    }
    Ok(t.done())
}

/// Runs the named suite.
pub fn run(name: &str, max_size: usize, exec: Exec) -> Result<SuiteOutcome> {
    match name {
        "semilattice" => suite_semilattice(max_size),
        "boolalg" => suite_boolalg(max_size),
        "invsgp" => suite_invsgp(max_size),
        "germoid" => suite_germoid(max_size),
        "bis" => suite_bis(max_size, exec),
        "lcmhull" => suite_lcmhull(exec),
        _ => Err(crate::Error::UnknownLabel(format!("suite {name}"))),
    }
}

pub fn run_all(max_size: usize, exec: Exec) -> Result<Vec<SuiteOutcome>> {
    SUITES.iter().map(|n| run(n, max_size, exec)).collect()
}
