use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use xjoin::bis;
use xjoin::boolalg;
use xjoin::dot;
use xjoin::germoid;
use xjoin::invsgp::FinInverseSemigroup;
use xjoin::lcmhull::{self, FoundationVerdict, MonoidChoice, RightLcmMonoid, ZappaSzepData, ZappaSzepJson};
use xjoin::semilattice::{self, FinMeetSemilattice, RelationKind, SemilatticeJson, XRelation, XRelationJson};
use xjoin::suite;
use xjoin::with_monoid;
use xjoin::Exec;

/// Finite X-to-join spectra, Booleanizations, germ groupoids and left inverse hulls.
#[derive(Parser)]
#[command(name = "xjoin", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run inner loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XKind {
    Tight,
    Prime,
    Core,
    None,
    /// Read relations from `--x-file`.
    File,
}

#[derive(Args, Clone)]
struct XArgs {
    #[arg(long = "x", value_enum, default_value_t = XKind::Tight)]
    x: XKind,
    /// Relation set as JSON `[{"e": label, "parts": [labels]}]`.
    #[arg(long)]
    x_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load a semilattice and report its X-spectrum.
    Semilattice {
        path: PathBuf,
        #[command(flatten)]
        x: XArgs,
    },
    /// Load an inverse semigroup from a table or from partial-map generators.
    Invsgp { path: PathBuf },
    /// The groupoid of germs over the X′-spectrum.
    Groupoid {
        #[arg(long)]
        invsgp: PathBuf,
        #[command(flatten)]
        x: XArgs,
    },
    /// The Booleanization of a semilattice or of an inverse semigroup.
    Booleanize {
        #[arg(long, conflicts_with = "invsgp", required_unless_present = "invsgp")]
        semilattice: Option<PathBuf>,
        #[arg(long)]
        invsgp: Option<PathBuf>,
        #[command(flatten)]
        x: XArgs,
    },
    /// Quotient of B(S) by the congruence of an invariant spectrum.
    QuotientCheck {
        #[arg(long)]
        invsgp: PathBuf,
        #[command(flatten)]
        x: XArgs,
        /// Check every invariant spectrum instead of the X′-spectrum.
        #[arg(long)]
        all_spectra: bool,
    },
    /// Generators and relations for B_X(S).
    PresentationCheck {
        #[arg(long)]
        invsgp: PathBuf,
        #[command(flatten)]
        x: XArgs,
    },
    /// Left inverse hulls of right LCM monoids.
    Hull {
        /// free:K, nat:K, nxn or adding-machine.
        #[arg(long, default_value = "free:2")]
        monoid: String,
        #[command(subcommand)]
        op: HullOp,
    },
    /// Run the invariant suites.
    Suite {
        #[arg(long, conflicts_with = "name", required_unless_present = "name")]
        all: bool,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum HullOp {
    /// Product of two elements written `[p,q]` or `0`.
    Mul { x: String, y: String },
    /// Decide whether a set is a foundation set.
    Foundation {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Compare the foundation decision with the cover condition on [1,1].
    Lemma {
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// The relations X_A of a Zappa-Szép product.
    Xa {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Zappa-Szép data; the adding machine if absent.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// The relations X_U of a Zappa-Szép product.
    Xu {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Validate Zappa-Szép data.
    ZsCheck {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

/// Whether the checked property held.
enum Verdict {
    Holds,
    Fails,
}

struct Ctx {
    format: Format,
    exec: Exec,
    out: String,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn json(&mut self, v: &impl serde::Serialize) -> Result<()> {
        let s = serde_json::to_string_pretty(v)?;
        self.line(s);
        Ok(())
    }

    fn require(&self, allowed: &[Format]) -> Result<()> {
        if !allowed.contains(&self.format) {
            bail!("this subcommand does not support the requested --format");
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_semilattice(path: &Path) -> Result<FinMeetSemilattice> {
    Ok(FinMeetSemilattice::parse_json(&read(path)?)?)
}

fn load_invsgp(path: &Path) -> Result<FinInverseSemigroup> {
    Ok(FinInverseSemigroup::parse_json(&read(path)?)?)
}

fn relations(e: &FinMeetSemilattice, x: &XArgs) -> Result<Vec<XRelation>> {
    let kind = match x.x {
        XKind::Tight => RelationKind::Tight,
        XKind::Prime => RelationKind::Prime,
        XKind::Core => RelationKind::Core,
        XKind::None => RelationKind::None,
        XKind::File => {
            let path = x.x_file.as_deref().context("--x file needs --x-file")?;
            let json: Vec<XRelationJson> = serde_json::from_str(&read(path)?)?;
            return Ok(semilattice::relations_from_json(e, &json)?);
        }
    };
    Ok(kind.generate(e))
}

fn spectrum_labels(e: &FinMeetSemilattice, s: &semilattice::Spectrum) -> Vec<String> {
    s.chars().iter().map(|c| format!("φ[{}]", e.label(c.gen()))).collect()
}

#[derive(serde::Serialize)]
struct SemilatticeReport<'a> {
    #[serde(flatten)]
    lattice: SemilatticeJson,
    relations: Vec<XRelationJson>,
    spectrum: &'a [String],
}

fn cmd_semilattice(ctx: &mut Ctx, path: &Path, x: &XArgs) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    let e = load_semilattice(path)?;
    let xs = relations(&e, x)?;
    let sp = semilattice::spectrum(&e, &xs);
    let labels = spectrum_labels(&e, &sp);
    if ctx.format == Format::Json {
        ctx.json(&SemilatticeReport {
            lattice: e.to_json(),
            relations: semilattice::relations_to_json(&e, &xs),
            spectrum: &labels,
        })?;
    } else {
        ctx.line(format!(
            "elements={} atoms={} relations={} spectrum={}",
            e.size(),
            e.atoms().len(),
            xs.len(),
            sp.len()
        ));
        ctx.line(format!("characters: {}", labels.join(" ")));
    }
    Ok(Verdict::Holds)
}

fn cmd_invsgp(ctx: &mut Ctx, path: &Path) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    let s = load_invsgp(path)?;
    if ctx.format == Format::Json {
        ctx.json(&s.to_json())?;
    } else {
        ctx.line(format!("elements={} idempotents={}", s.size(), s.idempotents().len()));
        ctx.line(format!("labels: {}", s.labels().join(" ")));
    }
    Ok(Verdict::Holds)
}

fn cmd_groupoid(ctx: &mut Ctx, path: &Path, x: &XArgs) -> Result<Verdict> {
    let s = load_invsgp(path)?;
    let xs = relations(s.semilattice(), x)?;
    let g = germoid::germ_groupoid(&s, &xs)?;
    match ctx.format {
        Format::Json => ctx.json(&g.groupoid().to_json())?,
        Format::Dot => ctx.line(dot::germ_groupoid_dot(&g).trim_end()),
        Format::Text => {
            let gr = g.groupoid();
            ctx.line(format!("units={} arrows={}", gr.unit_count(), gr.arrow_count()));
            for a in 0..gr.arrow_count() {
                ctx.line(format!(
                    "{}: {} -> {}",
                    gr.arrow_label(a),
                    gr.unit_label(gr.src(a)),
                    gr.unit_label(gr.rng(a))
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

fn cmd_booleanize(ctx: &mut Ctx, sl: Option<&Path>, inv: Option<&Path>, x: &XArgs) -> Result<Verdict> {
    if let Some(path) = sl {
        ctx.require(&[Format::Text, Format::Json])?;
        let e = load_semilattice(path)?;
        let xs = relations(&e, x)?;
        let bx = boolalg::booleanization(&e, &xs)?;
        if ctx.format == Format::Json {
            ctx.json(&bx.iota.to_json())?;
        } else {
            ctx.line(format!(
                "spectrum={} elements={}",
                bx.spectrum.len(),
                bx.algebra().size()
            ));
            ctx.line(format!("injective={}", bx.iota.is_injective()));
        }
        return Ok(Verdict::Holds);
    }
    let s = load_invsgp(inv.context("one of --semilattice or --invsgp is required")?)?;
    let xs = relations(s.semilattice(), x)?;
    let b = bis::iota(&s, &xs)?;
    match ctx.format {
        Format::Json => ctx.json(&b.algebra.to_json())?,
        Format::Dot => ctx.line(dot::germ_groupoid_dot(&b.germs).trim_end()),
        Format::Text => {
            let gr = b.germs.groupoid();
            ctx.line(format!(
                "spectrum={} arrows={} elements={}",
                gr.unit_count(),
                gr.arrow_count(),
                b.algebra.size()
            ));
            ctx.line(format!("injective={}", b.is_injective()));
        }
    }
    Ok(Verdict::Holds)
}

fn cmd_quotient(ctx: &mut Ctx, path: &Path, x: &XArgs, all: bool) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    let s = load_invsgp(path)?;
    let e = s.semilattice();
    let spectra = if all {
        s.invariant_spectra()?
    } else {
        vec![s.closed_spectrum(&relations(e, x)?)]
    };
    let mut ok = true;
    let mut reports = Vec::new();
    for chi in &spectra {
        let r = bis::theorem_quotients_check(&s, chi)?;
        ok &= r.passes();
        let labels = spectrum_labels(e, chi);
        if ctx.format == Format::Text {
            ctx.line(format!(
                "spectrum={} classes={} target={} recovered={} bijective={} additive={} weakly_meet_preserving={}",
                chi.len(),
                r.classes,
                r.target_elements,
                r.spectrum_recovered,
                r.bijective,
                r.additive,
                r.weakly_meet_preserving
            ));
            ctx.line(format!("  characters: {}", labels.join(" ")));
            if let Some(w) = &r.witness {
                ctx.line(format!("  witness: {w}"));
            }
        }
        reports.push(serde_json::json!({ "spectrum": labels, "report": r }));
    }
    if ctx.format == Format::Json {
        ctx.json(&reports)?;
    }
    Ok(if ok { Verdict::Holds } else { Verdict::Fails })
}

fn cmd_presentation(ctx: &mut Ctx, path: &Path, x: &XArgs) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    let s = load_invsgp(path)?;
    let xs = relations(s.semilattice(), x)?;
    let r = bis::check_presentation(&s, &xs)?;
    if ctx.format == Format::Json {
        ctx.json(&r)?;
    } else {
        ctx.line(format!(
            "relations_hold={} generated={} total={}",
            r.relations_hold, r.generated, r.total
        ));
        if let Some(w) = &r.witness {
            ctx.line(format!("witness: {w}"));
        }
    }
    Ok(if r.passes() { Verdict::Holds } else { Verdict::Fails })
}

/// Splits on commas outside parentheses and brackets.
fn split_set(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn zs_from(data: Option<&Path>, depth: usize) -> Result<(lcmhull::ZappaSzep, lcmhull::ZsReport)> {
    let data = match data {
        Some(p) => {
            let j: ZappaSzepJson = serde_json::from_str(&read(p)?)?;
            ZappaSzepData::from_json(&j)?
        }
        None => ZappaSzepData::adding_machine(),
    };
    Ok(lcmhull::zappa_szep(data, depth)?)
}

fn emit_relations<M: RightLcmMonoid>(ctx: &mut Ctx, m: &M, rels: &[lcmhull::HullRelation<M::Elem>]) -> Result<()> {
    if ctx.format == Format::Json {
        let v: Vec<_> = rels.iter().map(|r| r.to_json(m)).collect();
        ctx.json(&v)?;
    } else {
        ctx.line(format!("relations={}", rels.len()));
        for r in rels {
            ctx.line(r.show(m));
        }
    }
    Ok(())
}

fn hull_generic<M: RightLcmMonoid>(ctx: &mut Ctx, m: &M, op: &HullOp) -> Result<Verdict> {
    let parse_set = |s: &str| -> Result<Vec<M::Elem>> {
        Ok(split_set(s)
            .into_iter()
            .map(|x| m.parse(x))
            .collect::<xjoin::Result<_>>()?)
    };
    match op {
        HullOp::Mul { x, y } => {
            let p = lcmhull::hull_mul(m, &lcmhull::parse_hull(m, x)?, &lcmhull::parse_hull(m, y)?)?;
            let shown = lcmhull::show_hull(m, &p);
            if ctx.format == Format::Json {
                ctx.json(&shown)?;
            } else {
                ctx.line(shown);
            }
            Ok(Verdict::Holds)
        }
        HullOp::Foundation { set, depth } => {
            let f = parse_set(set)?;
            let v = lcmhull::is_foundation_set(m, &f, *depth);
            let (word, witness) = match &v {
                FoundationVerdict::Yes => ("yes".to_string(), None),
                FoundationVerdict::No(w) => ("no".to_string(), Some(m.show(w))),
                FoundationVerdict::Unknown { depth } => (format!("unknown depth={depth}"), None),
            };
            if ctx.format == Format::Json {
                ctx.json(&serde_json::json!({ "foundation": word, "witness": witness }))?;
            } else {
                ctx.line(format!("foundation={word}"));
                if let Some(w) = witness {
                    ctx.line(format!("witness: {w}"));
                }
            }
            Ok(if v.is_no() { Verdict::Fails } else { Verdict::Holds })
        }
        HullOp::Lemma { set, depth } => {
            let f = parse_set(set)?;
            let r = lcmhull::lemma_found_check(m, &f, *depth)?;
            let found = match &r.foundation {
                FoundationVerdict::Yes => "yes".to_string(),
                FoundationVerdict::No(w) => format!("no witness={}", m.show(w)),
                FoundationVerdict::Unknown { depth } => format!("unknown depth={depth}"),
            };
            let cover = r
                .cover_witness
                .as_ref()
                .map_or("yes".to_string(), |w| format!("no witness={}", m.show(w)));
            if ctx.format == Format::Json {
                ctx.json(
                    &serde_json::json!({ "foundation": found, "cover": cover, "depth": r.depth, "agree": r.agree }),
                )?;
            } else {
                ctx.line(format!("foundation={found}"));
                ctx.line(format!("cover={cover}"));
                ctx.line(format!("depth={} agree={}", r.depth, r.agree));
            }
            Ok(if r.agree { Verdict::Holds } else { Verdict::Fails })
        }
        HullOp::Xa { .. } | HullOp::Xu { .. } | HullOp::ZsCheck { .. } => unreachable!("handled by cmd_hull"),
    }
}

fn cmd_hull(ctx: &mut Ctx, monoid: &str, op: &HullOp) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    match op {
        HullOp::Xa { depth, data } => {
            let (p, _) = zs_from(data.as_deref(), *depth)?;
            emit_relations(ctx, &p, &lcmhull::gen_xa(&p, *depth))?;
            Ok(Verdict::Holds)
        }
        HullOp::Xu { depth, data, max_parts } => {
            let (p, _) = zs_from(data.as_deref(), *depth)?;
            emit_relations(ctx, &p, &lcmhull::gen_xu(&p, *depth, *max_parts))?;
            Ok(Verdict::Holds)
        }
        HullOp::ZsCheck { depth, data } => match zs_from(data.as_deref(), *depth) {
            Ok((_, r)) => {
                if ctx.format == Format::Json {
                    ctx.json(&r)?;
                } else {
                    ctx.line(format!(
                        "depth={} c1={} c2={} c3={} laws_checked={} length_preserving={}",
                        r.depth, r.c1, r.c2, r.c3, r.laws_checked, r.length_preserving
                    ));
                }
                Ok(Verdict::Holds)
            }
            Err(e) => match e.downcast_ref::<xjoin::Error>() {
                Some(law @ xjoin::Error::LawViolated { .. }) => {
                    ctx.line(format!("rejected: {law}"));
                    Ok(Verdict::Fails)
                }
                _ => Err(e),
            },
        },
        _ => {
            let choice: MonoidChoice = monoid.parse()?;
            with_monoid!(&choice, m => hull_generic(ctx, m, op))
        }
    }
}

fn cmd_suite(ctx: &mut Ctx, name: Option<&str>, max_size: usize) -> Result<Verdict> {
    ctx.require(&[Format::Text, Format::Json])?;
    let outcomes = match name {
        Some(n) => vec![suite::run(n, max_size, ctx.exec)?],
        None => suite::run_all(max_size, ctx.exec)?,
    };
    if ctx.format == Format::Json {
        ctx.json(&outcomes)?;
    } else {
        for o in &outcomes {
            let mut l = format!(
                "{} cases={} {}",
                o.name,
                o.cases,
                if o.passed() { "pass" } else { "FAIL" }
            );
            if let Some(w) = &o.witness {
                let _ = write!(l, " witness: {w}");
            }
            ctx.line(l);
        }
    }
    Ok(if outcomes.iter().all(|o| o.passed()) {
        Verdict::Holds
    } else {
        Verdict::Fails
    })
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Verdict> {
    match &cli.cmd {
        Cmd::Semilattice { path, x } => cmd_semilattice(ctx, path, x),
        Cmd::Invsgp { path } => cmd_invsgp(ctx, path),
        Cmd::Groupoid { invsgp, x } => cmd_groupoid(ctx, invsgp, x),
        Cmd::Booleanize { semilattice, invsgp, x } => cmd_booleanize(ctx, semilattice.as_deref(), invsgp.as_deref(), x),
        Cmd::QuotientCheck { invsgp, x, all_spectra } => cmd_quotient(ctx, invsgp, x, *all_spectra),
        Cmd::PresentationCheck { invsgp, x } => cmd_presentation(ctx, invsgp, x),
        Cmd::Hull { monoid, op } => cmd_hull(ctx, monoid, op),
        Cmd::Suite { all: _, name, max_size } => cmd_suite(ctx, name.as_deref(), *max_size),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let mut ctx = Ctx {
        format: cli.format,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
        out: String::new(),
    };
    let verdict = match run(&cli, &mut ctx) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &ctx.out).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{}", ctx.out);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match verdict {
        Verdict::Holds => ExitCode::SUCCESS,
        Verdict::Fails => ExitCode::from(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_splitting() {
        assert_eq!(split_set("a,b"), vec!["a", "b"]);
        assert_eq!(split_set("(1,0),(0,2)"), vec!["(1,0)", "(0,2)"]);
        assert!(split_set("").is_empty());
    }
}
