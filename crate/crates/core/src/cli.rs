//! Command-line driver: session configuration, subcommand dispatch and exit
//! codes (0 all checks pass, 1 a check failed, 2 usage or parse error).

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bundle::{AssociatedBundle, BundleSpec, Fibre, Mode};
use crate::dsl::{parse, parse_element, MapKind, Model};
use crate::error::{Error, Result};
use crate::gauge::{
    canonical_connection, connection_check, curvature, degree_beta, gauge_covariance_report,
    gauge_group_report, gauge_to_base, monopole_report, phi_e_report, projection_from_omega,
    sample_gauge_maps, section_from_phi, section_on_p, section_roundtrip_report, strongness_check,
    trivial_connection, trivial_curvature_report, trivialisation_from_section,
    vertical_auto_from_f, ConnectionForm, GaugeMap,
};
use crate::hopf::BasisLinearMap;
use crate::ncalg::{confluence_check, NCElement, DEFAULT_BUDGET};
use crate::presets;
use crate::report::{Format, Report};
use crate::sample::DEFAULT_SEED;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Preset(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    pub degree: usize,
    pub source: Source,
    pub format: Format,
    pub seed: u64,
    pub budget: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            degree: 3,
            source: Source::Preset("suq2".into()),
            format: Format::Text,
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl SessionConfig {
    pub fn preset(name: &str) -> Self {
        SessionConfig {
            source: Source::Preset(name.into()),
            ..Self::default()
        }
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn source_text(&self) -> Result<String> {
        match &self.source {
            Source::Preset(p) => presets::source(p).ok_or_else(|| {
                Error::Usage(format!(
                    "unknown preset `{p}` (known: {})",
                    presets::PRESET_NAMES.join(", ")
                ))
            }),
            Source::File(f) => std::fs::read_to_string(f)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", f.display()))),
        }
    }

    pub fn model(&self) -> Result<Model> {
        Model::build(parse(&self.source_text()?)?, self.budget)
    }

    fn source_name(&self) -> String {
        match &self.source {
            Source::Preset(p) => p.clone(),
            Source::File(f) => f.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(
    name = "qfibre",
    version,
    about = "Exact checks for quantum principal bundles"
)]
struct Args {
    #[command(subcommand)]
    cmd: Command,
    /// Built-in document: suq2, u1, trivial, product.
    #[arg(long, global = true, conflicts_with = "file")]
    preset: Option<String>,
    /// Presentation document to load instead of a preset.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Truncation degree.
    #[arg(long, global = true, default_value_t = 3)]
    degree: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    /// Rewriting step budget per reduction.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Axiom suites.
    Check {
        #[command(subcommand)]
        what: CheckTarget,
    },
    /// Normal-word basis of every algebra up to the truncation degree.
    Basis,
    /// Normal form of an expression.
    Reduce {
        expr: String,
        /// Algebra to reduce in; defaults to the first one declared.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Coinvariant subalgebra of the bundle.
    Coinvariants,
    /// Connection checks on the bundle.
    Connection {
        #[command(subcommand)]
        what: ConnectionTarget,
    },
    /// Curvature of the bundle's connection.
    Curvature {
        /// Coinvariant `b` for `β(a) = deg(a)·db` on a trivial bundle.
        #[arg(long)]
        b: Option<String>,
    },
    /// Gauge transformation declared as `map f : H -> P { ... }` in a file.
    Gauge {
        f_file: PathBuf,
        #[arg(long)]
        b: Option<String>,
    },
    /// Cross sections of the associated bundle with fibre `H`.
    Section,
    /// Canonical connection of the Hopf fibration for `|n| <= N`.
    Monopole {
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CheckTarget {
    /// Coassociativity, counit and antipode on every basis word.
    Hopf,
    /// Coaction axioms, coinvariants, freeness and exactness.
    Bundle,
    /// Critical pairs of every rewriting system.
    Rewriting,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum ConnectionTarget {
    /// Connection, projection and strongness laws.
    Verify {
        #[arg(long)]
        b: Option<String>,
    },
}

/// Parses `argv`, runs the command and prints the report. Returns the exit
/// code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let source = match (args.preset, args.file) {
        (_, Some(f)) => Source::File(f),
        (Some(p), None) => Source::Preset(p),
        (None, None) => Source::Preset("suq2".into()),
    };
    let cfg = SessionConfig {
        degree: args.degree,
        source,
        format: match args.format {
            FormatArg::Text => Format::Text,
            FormatArg::Records => Format::Records,
        },
        seed: args.seed,
        budget: args.budget,
    };
    match run_command(&args.cmd, &cfg) {
        Ok(rep) => {
            print!("{}", rep.render(cfg.format));
            if rep.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for usage, parse and truncation errors, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::Parse { .. }
        | Error::Undeclared(_)
        | Error::NonOrientable(_)
        | Error::Presentation(_)
        | Error::TruncationTooSmall(_) => 2,
        _ => 1,
    }
}

pub fn run_command(cmd: &Command, cfg: &SessionConfig) -> Result<Report> {
    let model = cfg.model()?;
    let d = cfg.degree;
    let title = match cmd {
        Command::Check { what } => format!("check {}", format!("{what:?}").to_lowercase()),
        Command::Connection { .. } => "connection verify".into(),
        other => format!("{other:?}")
            .split([' ', '{'])
            .next()
            .unwrap_or_default()
            .to_lowercase(),
    };
    let mut rep = Report::new(format!("{title} on {}", cfg.source_name())).with_seed(cfg.seed);
    for w in model.warnings() {
        rep.info("dsl.warning", "relation orientation", 0, w.clone());
    }
    match cmd {
        Command::Check {
            what: CheckTarget::Hopf,
        } => {
            let names: Vec<String> = model.algebra_names().map(String::from).collect();
            let mut any = false;
            for a in names {
                if let Ok(h) = model.hopf(&a) {
                    any = true;
                    rep.extend(h.check_hopf_axioms(d)?);
                }
            }
            if !any {
                return Err(Error::Usage("document has no hopf block".into()));
            }
        }
        Command::Check {
            what: CheckTarget::Bundle,
        } => {
            let spec = BundleSpec::from_model(&model, d)?;
            rep.extend(spec.comodule().coaction_axioms(d)?);
            rep.extend(spec.coinvariant_report(d)?.1);
            rep.extend(spec.freeness_check(d)?);
            rep.extend(spec.exactness_check(d)?);
            if spec.trivialisation().is_some() {
                rep.extend(spec.theta_report(d, cfg.seed)?);
            }
        }
        Command::Check {
            what: CheckTarget::Rewriting,
        } => {
            let names: Vec<String> = model.algebra_names().map(String::from).collect();
            for a in names {
                let p = model.algebra(&a)?;
                let c = confluence_check(&p, d)?;
                let witness = match c.failures.first() {
                    None => format!("{} critical pairs resolved", c.pairs_checked),
                    Some(f) => format!(
                        "{} of {} pairs fail; first at {}: {} vs {}",
                        c.failures.len(),
                        c.pairs_checked,
                        f.word.render(p.gens()),
                        p.render(&f.left),
                        p.render(&f.right)
                    ),
                };
                rep.check(
                    format!("rewriting.{a}.confluent"),
                    "critical pairs resolve",
                    d,
                    c.is_confluent(),
                    witness,
                );
            }
        }
        Command::Basis => {
            let names: Vec<String> = model.algebra_names().map(String::from).collect();
            for a in names {
                let p = model.algebra(&a)?;
                for k in 0..=d {
                    let words: Vec<String> = p
                        .basis_of_degree(k)
                        .iter()
                        .map(|w| w.render(p.gens()))
                        .collect();
                    rep.info(
                        format!("basis.{a}.{k}"),
                        "normal words",
                        k,
                        format!("{} words: {}", words.len(), words.join(", ")),
                    );
                }
            }
        }
        Command::Reduce { expr, algebra } => {
            let name = match algebra {
                Some(a) => a.clone(),
                None => model
                    .algebra_names()
                    .next()
                    .ok_or_else(|| Error::Usage("document declares no algebra".into()))?
                    .to_string(),
            };
            let p = model.algebra(&name)?;
            let x = p.reduce(&parse_element(expr, p.gens())?)?;
            rep.info(
                format!("reduce.{name}"),
                expr.clone(),
                x.max_degree(),
                p.render(&x),
            );
        }
        Command::Coinvariants => {
            let spec = BundleSpec::from_model(&model, d)?;
            rep.extend(spec.coinvariant_report(d)?.1);
        }
        Command::Connection {
            what: ConnectionTarget::Verify { b },
        } => {
            let spec = BundleSpec::from_model(&model, d)?;
            let omega = bundle_connection(&model, &spec, b.as_deref(), d, &mut rep)?;
            rep.extend(connection_check(&omega, &spec, d)?);
            rep.extend(projection_from_omega(&omega, &spec).report(d)?);
            rep.extend(strongness_check(&omega, &spec, d)?);
        }
        Command::Curvature { b } => {
            let spec = BundleSpec::from_model(&model, d)?;
            if spec.mode() == Mode::Trivialisation {
                let beta = beta_for(&spec, b.as_deref(), d)?;
                rep.extend(trivial_curvature_report(&spec, &beta, d)?);
            } else {
                let omega = bundle_connection(&model, &spec, None, d, &mut rep)?;
                let f = curvature(&omega, &spec, d)?;
                if let Some(w) = &f.warning {
                    rep.info("curvature.warning", "strongness", d, w.clone());
                }
                rep.info("curvature.values", "F = dω + ω∗ω", d, f.map.render());
            }
        }
        Command::Gauge { f_file, b } => {
            let extra = std::fs::read_to_string(f_file)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", f_file.display())))?;
            gauge_command(cfg, &extra, b.as_deref(), &mut rep)?;
        }
        Command::Section => section_command(&model, d, cfg.seed, &mut rep)?,
        Command::Monopole { n } => {
            if !matches!(&cfg.source, Source::Preset(p) if p == "suq2" || p == "hopf-fibration") {
                return Err(Error::Usage("monopole runs on the suq2 preset".into()));
            }
            let m = monopole_report(*n)?;
            let z = m.find("monopole.omega.n1").map(|r| r.witness.clone());
            rep.extend(m);
            if let Some(w) = z {
                rep.info("monopole.render", "ω(Z)", 1, w);
            }
        }
    }
    Ok(rep)
}

fn beta_for(spec: &BundleSpec, b: Option<&str>, d: usize) -> Result<BasisLinearMap> {
    match b {
        Some(src) => degree_beta(spec, &parse_element(src, spec.total().gens())?, d),
        None => Ok(BasisLinearMap::zero(
            spec.h_pres().clone(),
            spec.total().clone(),
            d,
            2,
        )),
    }
}

/// The canonical connection from the map `i` on a Hopf projection, or the
/// trivial-bundle connection from `β` (zero unless `b` is given).
fn bundle_connection(
    model: &Model,
    spec: &BundleSpec,
    b: Option<&str>,
    d: usize,
    rep: &mut Report,
) -> Result<ConnectionForm> {
    match spec.mode() {
        Mode::Projection => {
            let imap = model.algebra_map("i").map_err(|_| {
                Error::Usage("canonical connection needs a map `i : H -> P`".into())
            })?;
            let i =
                BasisLinearMap::from_fn(spec.h_pres().clone(), spec.total().clone(), d, 1, |w| {
                    imap.apply_word(w)
                })?;
            let (omega, hyp) = canonical_connection(spec, &i)?;
            rep.extend(hyp);
            Ok(omega)
        }
        Mode::Trivialisation => trivial_connection(spec, &beta_for(spec, b, d)?),
        Mode::Bare => Err(Error::Usage(
            "connections need a Hopf projection or a trivialisation".into(),
        )),
    }
}

fn gauge_command(
    cfg: &SessionConfig,
    extra: &str,
    b: Option<&str>,
    rep: &mut Report,
) -> Result<()> {
    let base = parse(&cfg.source_text()?)?;
    let doc = parse(&format!("{}\n{extra}", cfg.source_text()?))?;
    let decl = doc
        .maps
        .iter()
        .rev()
        .find(|m| m.kind == MapKind::Map && !base.maps.iter().any(|x| x.name == m.name))
        .ok_or_else(|| Error::Usage("gauge file declares no `map f : H -> P`".into()))?
        .clone();
    let model = Model::build(doc, cfg.budget)?;
    let d = cfg.degree;
    let spec = BundleSpec::from_model(&model, d)?;
    if model.algebra(&decl.source)?.name() != spec.h_pres().name()
        || model.algebra(&decl.target)?.name() != spec.total().name()
    {
        return Err(Error::Usage(format!(
            "`{}` must map {} -> {}",
            decl.name,
            spec.h_pres().name(),
            spec.total().name()
        )));
    }
    let fmap = model.algebra_map(&decl.name)?;
    let f = BasisLinearMap::from_fn(spec.h_pres().clone(), spec.total().clone(), d, 1, |w| {
        fmap.apply_word(w)
    })?;
    let f = GaugeMap::new(f, spec.hopf())?;
    rep.info("gauge.f", "f", d, f.render());
    rep.info(
        "gauge.strategy",
        "convolution inverse",
        d,
        format!("{:?}", f.strategy()),
    );
    rep.extend(vertical_auto_from_f(&f, &spec)?.report(d, cfg.seed)?);
    let mut maps = vec![f.clone()];
    if spec.mode() == Mode::Trivialisation {
        rep.info(
            "gauge.base",
            "γ = Φ∗f∗Φ⁻¹",
            d,
            gauge_to_base(&f, &spec)?.render(),
        );
        let (y, yi) = coinvariant_unit(&spec)?;
        maps.extend(sample_gauge_maps(&spec, &y, &yi, d, cfg.seed, 2)?);
    }
    rep.extend(gauge_group_report(&spec, &maps, d, cfg.seed)?);
    let mut scratch = Report::default();
    let omega = bundle_connection(&model, &spec, b, d, &mut scratch)?;
    rep.extend(gauge_covariance_report(&omega, &f, &spec, d.min(2))?);
    Ok(())
}

/// An invertible coinvariant generator `b` with its inverse, for sampling
/// gauge maps `Zⁿ ↦ λⁿ bᵏⁿ`.
fn coinvariant_unit(spec: &BundleSpec) -> Result<(NCElement, NCElement)> {
    let p = spec.total();
    for (g, _) in p.gens().names().iter().enumerate() {
        let x = NCElement::word(crate::ncalg::Word::gen(g as u32));
        if x.max_degree() == 0 || !spec.comodule().is_coinvariant(&x)? {
            continue;
        }
        for (k, _) in p.gens().names().iter().enumerate() {
            let y = NCElement::word(crate::ncalg::Word::gen(k as u32));
            if p.multiply(&x, &y)? == NCElement::one() && p.multiply(&y, &x)? == NCElement::one() {
                return Ok((x, y));
            }
        }
    }
    Ok((NCElement::one(), NCElement::one()))
}

fn section_command(model: &Model, d: usize, seed: u64, rep: &mut Report) -> Result<()> {
    let spec = Arc::new(BundleSpec::from_model(model, d)?);
    let fibre = Fibre::regular(spec.hopf(), d)?;
    let ab = AssociatedBundle::new(spec.clone(), fibre);
    let p = spec.total().clone();
    let h = spec.hopf();
    let phi = match spec.mode() {
        Mode::Projection => {
            let m = model
                .algebra_map("phi")
                .map_err(|_| Error::Usage("section needs a map `phi : H -> P`".into()))?;
            BasisLinearMap::from_fn(spec.h_pres().clone(), p.clone(), d, 1, |w| m.apply_word(w))?
        }
        Mode::Trivialisation => {
            let tr = spec.trivialisation().expect("mode");
            rep.extend(phi_e_report(&ab, d.min(2))?);
            BasisLinearMap::from_element_fn(spec.h_pres().clone(), p.clone(), d, |w| {
                tr.phi
                    .apply_element(&h.antipode(&NCElement::word(w.clone()))?)
            })?
        }
        Mode::Bare => {
            return Err(Error::Usage(
                "sections need an equivariant map `phi`".into(),
            ))
        }
    };
    rep.info("section.phi", "φ : H → P", d, phi.render());
    rep.extend(section_roundtrip_report(&phi, &ab, d.min(2))?);
    let (s, _) = section_from_phi(phi, &ab, d.min(2))?;
    match trivialisation_from_section(&|u| section_on_p(&s, &ab, u), &spec, d.min(2), seed) {
        Ok((_, r)) => rep.extend(r),
        Err(Error::NotAlgebraMap(w)) => rep.info(
            "section.trivialisation",
            "trivialisation from s",
            d.min(2),
            format!("section is not an algebra map: {w}"),
        ),
        Err(e) => return Err(e),
    }
    Ok(())
}
