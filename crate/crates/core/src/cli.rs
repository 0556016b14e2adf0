//! Command-line front end. Exit codes: 0 all checks pass, 1 a check fails, 2 usage or input
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{validate_algebra, Algebra};
use crate::bimodule::{dual_bimodule, validate_bimodule, validate_bimodule_algebra, BimoduleAlgebra};
use crate::bundle::{Bundle, NamedBimodule, NamedForm, NamedTensor};
use crate::double::{
    double_aybe_tests, gaybe_lift_conditions, gaybe_o_conditions, lifted_balanced_check, verify_skewgm,
    DoubleContext,
};
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::fixtures;
use crate::frobenius::{form_from_invariant_tensor, intertwining_check, validate_frobenius, verify_frobenius_equivalence};
use crate::matched_pair::{matched_pair_sum, split_algebra, validate_matched_pair};
use crate::matrix::LinearMap;
use crate::operator::{
    check_averaging, check_nijenhuis, condition_residual, diamond_products, extended_o_residual,
    o_operator_residual, pgmybe_residual, rota_baxter_residual, shift_equivalence, star_product, verify_ansatz, Gate,
    OperatorContext,
};
use crate::report::{IdentityCheck, Report};
use crate::search::{search, search_random, Predicate, PredicateParams, SearchOptions, SearchSpace, Symmetry, DEFAULT_BUDGET};
use crate::tensor::Tensor2;
use crate::verify::{self, Mode, VerifyOptions, TARGETS};
use crate::ybe::{
    aayb_residual, aguiar_map, aybe_report, dual_product, eaybe_residual, gaybe_report, invariance_residual,
    operator_form_residual, weight_one_residuals,
};

#[derive(Parser, Debug)]
#[command(name = "ybelab", version, about = "Exact checks for Rota-Baxter operators and Yang-Baxter equations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Evaluate one identity on named objects.
    Check {
        target: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Build a derived structure and print it as a bundle.
    Construct {
        target: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Enumerate tensors or maps satisfying a registered predicate.
    Search {
        target: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a theorem sweep.
    Verify {
        target: Option<String>,
        /// List the verification targets.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// List, write or check the canonical fixture bundles.
    Fixtures {
        #[arg(long, value_name = "DIR")]
        write: Option<PathBuf>,
        #[arg(long, value_name = "DIR")]
        check: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct Opts {
    /// Bundle path, or a fixture name (nil2, ut2, dualnum, zeroalg2, m2).
    #[arg(long)]
    algebra: Option<String>,
    /// Which algebra of a multi-algebra bundle.
    #[arg(long = "algebra-name")]
    algebra_name: Option<String>,
    #[arg(long)]
    bimodule: Option<String>,
    #[arg(long)]
    map: Option<String>,
    /// Second map: the modification, or `δ₋`.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    tensor: Option<String>,
    #[arg(long)]
    form: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// `κ` or `κ,μ`.
    #[arg(long, allow_hyphen_values = true)]
    mass: Option<String>,
    #[arg(long = "eaybe-mass", allow_hyphen_values = true)]
    eaybe_mass: Option<String>,
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    json: bool,
    #[arg(long, conflicts_with = "symmetric")]
    skew: bool,
    #[arg(long)]
    symmetric: bool,
    #[arg(long = "dimA")]
    dim_a: Option<usize>,
    #[arg(long = "dimV")]
    dim_v: Option<usize>,
    /// Literal reading of the trailing `= 0` in the last two matched-pair identities.
    #[arg(long)]
    strict: bool,
    /// Basis split `i,j:k,l` for matched pairs.
    #[arg(long)]
    split: Option<String>,
}

/// Runs the command line with stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.verb, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let LabError::Invalid { report, .. } | LabError::NotAssociative(report) = &e {
                let _ = write!(err, "{report}");
            }
            2
        }
    }
}

fn dispatch(verb: Verb, out: &mut dyn Write) -> Result<bool> {
    match verb {
        Verb::Check { target, opts } => {
            let inputs = Inputs::load(&opts)?;
            let report = match check(&target, &inputs, &opts) {
                Err(LabError::Gate { gate, report }) => {
                    let mut r = Report::from_checks(vec![IdentityCheck::verdict("gate", false, gate)]);
                    r.extend(*report);
                    r
                }
                other => other?,
            };
            emit_report(out, &report, opts.json)?;
            Ok(report.pass)
        }
        Verb::Construct { target, opts } => {
            let inputs = Inputs::load(&opts)?;
            let bundle = construct(&target, &inputs, &opts)?;
            write!(out, "{}", bundle.emit())?;
            Ok(true)
        }
        Verb::Search { target, opts } => run_search(&target, &opts, out),
        Verb::Verify { target, list, opts } => {
            if list {
                for t in TARGETS {
                    writeln!(out, "{:<16} {}", t.id, t.statement)?;
                }
                return Ok(true);
            }
            let target = target.ok_or_else(|| LabError::Unknown {
                kind: "verify target",
                name: "(none given; use --list)".into(),
            })?;
            run_verify(&target, &opts, out)
        }
        Verb::Fixtures { write, check } => run_fixtures(write.as_deref(), check.as_deref(), out),
    }
}

fn emit_report(out: &mut dyn Write, report: &Report, json: bool) -> Result<()> {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(())
}

fn budget(opts: &Opts) -> Result<u128> {
    if let Some(b) = opts.budget {
        return Ok(b);
    }
    match std::env::var("YBELAB_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| LabError::Unknown {
            kind: "YBELAB_BUDGET value",
            name: v,
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn workers(opts: &Opts) -> usize {
    opts.workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

/// The loaded bundle and its selected algebra.
struct Inputs {
    bundle: Bundle,
    name: String,
    algebra: Algebra,
}

impl Inputs {
    fn load(opts: &Opts) -> Result<Self> {
        let src = opts.algebra.as_deref().ok_or_else(|| LabError::Unknown {
            kind: "algebra",
            name: "(none given; use --algebra)".into(),
        })?;
        let bundle = open_bundle(src, opts.field)?;
        let (name, algebra) = bundle.pick_algebra(opts.algebra_name.as_deref())?;
        let (name, algebra) = (name.clone(), algebra.clone());
        Ok(Inputs { bundle, name, algebra })
    }

    fn field(&self) -> FieldSpec {
        self.bundle.field
    }

    fn scalar(&self, s: Option<&str>) -> Result<Scalar> {
        match s {
            Some(s) => self.field().parse_scalar(s),
            None => Ok(self.field().zero()),
        }
    }

    fn masses(&self, opts: &Opts) -> Result<(Scalar, Scalar)> {
        match opts.mass.as_deref() {
            None => Ok((self.field().zero(), self.field().zero())),
            Some(m) => {
                let mut parts = m.splitn(2, ',');
                let kappa = self.scalar(parts.next())?;
                let mu = self.scalar(parts.next())?;
                Ok((kappa, mu))
            }
        }
    }

    fn map(&self, name: Option<&str>, flag: &str) -> Result<LinearMap> {
        let name = name.ok_or_else(|| LabError::Unknown {
            kind: "map",
            name: format!("(none given; use {flag})"),
        })?;
        self.bundle.map(name).cloned()
    }

    fn tensor(&self, opts: &Opts) -> Result<Tensor2> {
        let name = opts.tensor.as_deref().ok_or_else(|| LabError::Unknown {
            kind: "tensor",
            name: "(none given; use --tensor)".into(),
        })?;
        Ok(self.bundle.tensor(name)?.tensor.clone())
    }

    fn bimodule_algebra(&self, opts: &Opts) -> Result<Option<BimoduleAlgebra>> {
        match opts.bimodule.as_deref() {
            None => Ok(None),
            Some(n) => Ok(Some(self.bundle.bimodule(n)?.bimodule_algebra()?)),
        }
    }

    /// The named bimodule (algebra), or `(A, ., L, R)`, with weight and masses applied.
    fn context(&self, opts: &Opts) -> Result<OperatorContext> {
        let ctx = match self.bimodule_algebra(opts)? {
            Some(r) => OperatorContext::new(self.algebra.clone(), r)?,
            None => OperatorContext::regular(&self.algebra),
        };
        let (kappa, mu) = self.masses(opts)?;
        Ok(ctx.with_weight(self.scalar(opts.weight.as_deref())?).with_mass(kappa, mu))
    }

    fn double(&self, opts: &Opts) -> Result<DoubleContext> {
        match self.bimodule_algebra(opts)? {
            Some(r) => DoubleContext::new(&self.algebra, r.module()),
            None => DoubleContext::regular(&self.algebra),
        }
    }

    fn form(&self, opts: &Opts) -> Result<crate::frobenius::BilinearForm> {
        let name = opts.form.as_deref().ok_or_else(|| LabError::Unknown {
            kind: "form",
            name: "(none given; use --form)".into(),
        })?;
        Ok(self.bundle.form(name)?.form.clone())
    }
}

/// A bundle file, or a fixture by name (over the rationals unless `field` is given).
fn open_bundle(src: &str, field: Option<FieldSpec>) -> Result<Bundle> {
    let bundle = if Path::new(src).exists() {
        Bundle::load(src)?
    } else {
        let f = field.unwrap_or(FieldSpec::Rationals);
        fixtures::bundle(src, f).ok_or_else(|| LabError::Unknown {
            kind: "bundle file or fixture",
            name: src.to_string(),
        })?
    };
    match field {
        Some(f) if f != bundle.field => bundle.with_field(f),
        _ => Ok(bundle),
    }
}

fn parse_split(s: Option<&str>) -> Result<(Vec<usize>, Vec<usize>)> {
    let s = s.ok_or_else(|| LabError::Unknown {
        kind: "split",
        name: "(none given; use --split i,j:k,l)".into(),
    })?;
    let bad = || LabError::Unknown {
        kind: "split",
        name: s.to_string(),
    };
    let (l, r) = s.split_once(':').ok_or_else(bad)?;
    let parse = |p: &str| -> Result<Vec<usize>> {
        p.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect()
    };
    Ok((parse(l)?, parse(r)?))
}

/// Identity ids accepted by `check`.
pub const CHECKS: &[&str] = &[
    "de:alg",
    "de:bim",
    "de:bimal",
    "de:mp",
    "de:frob",
    "eq:rbo",
    "eq:aop",
    "eq:gmybe",
    "eq:condition",
    "eq:pgmybe",
    "eq:aybe",
    "eq:aayb",
    "eq:type2aybe",
    "eq:maybe",
    "eq:aybeform",
    "eq:invariant",
    "eq:opweight1",
    "averaging",
    "nijenhuis",
    "pp:frob",
    "thm:ansatz",
    "co:mop",
    "thm:equivalence",
    "le:syco",
    "thm:skewgm",
    "co:motoaybe1",
    "thm:maybeequi",
    "co:motoaybe2",
];

fn check(target: &str, inp: &Inputs, opts: &Opts) -> Result<Report> {
    let a = &inp.algebra;
    let f = inp.field();
    let weight = || inp.scalar(opts.weight.as_deref());
    let map = || inp.map(opts.map.as_deref(), "--map");
    let beta = || inp.map(opts.beta.as_deref(), "--beta");
    Ok(match target {
        "de:alg" => validate_algebra(a.table()),
        "de:bim" => {
            let r = inp.bimodule_algebra(opts)?.ok_or_else(|| LabError::Unknown {
                kind: "bimodule",
                name: "(none given; use --bimodule)".into(),
            })?;
            validate_bimodule(a, r.module())?
        }
        "de:bimal" => {
            let r = inp.bimodule_algebra(opts)?.unwrap_or_else(|| BimoduleAlgebra::regular(a));
            validate_bimodule_algebra(a, &r)?
        }
        "de:mp" => {
            let (ia, ib) = parse_split(opts.split.as_deref())?;
            validate_matched_pair(&split_algebra(a, &ia, &ib)?, opts.strict)?
        }
        "de:frob" => validate_frobenius(a, &inp.form(opts)?, opts.symmetric)?,
        "eq:rbo" => rota_baxter_residual(a, &map()?, &weight()?)?,
        "eq:aop" => o_operator_residual(&inp.context(opts)?, &map()?)?,
        "eq:gmybe" => extended_o_residual(&inp.context(opts)?, &map()?, &beta()?, Gate::BalancedHom)?,
        "eq:condition" => condition_residual(&inp.context(opts)?, &map()?)?,
        "eq:pgmybe" => {
            let (kappa, _) = inp.masses(opts)?;
            pgmybe_residual(a, &map()?, &weight()?, &kappa)?
        }
        "eq:aybe" => aybe_report(a, &inp.tensor(opts)?)?,
        "eq:aayb" => Report::from_checks(vec![aayb_residual(a, &inp.tensor(opts)?)?.to_check("eq:aayb")]),
        "eq:type2aybe" => {
            let eps = inp.scalar(opts.eaybe_mass.as_deref())?;
            Report::from_checks(vec![eaybe_residual(a, &inp.tensor(opts)?, &eps)?.to_check("eq:type2aybe")])
        }
        "eq:maybe" => gaybe_report(a, &inp.tensor(opts)?)?,
        "eq:aybeform" => operator_form_residual(a, &inp.tensor(opts)?)?,
        "eq:invariant" => invariance_residual(a, &inp.tensor(opts)?)?,
        "eq:opweight1" => {
            let (p, m) = weight_one_residuals(a, &inp.tensor(opts)?)?;
            let mut r = p.prefixed("plus.");
            r.extend(m.prefixed("minus."));
            r
        }
        "averaging" => check_averaging(a, &map()?)?,
        "nijenhuis" => check_nijenhuis(a, &map()?)?,
        "pp:frob" => intertwining_check(a, &inp.form(opts)?)?,
        "thm:ansatz" => verify_ansatz(&inp.context(opts)?, &map()?, &beta()?)?,
        "co:mop" => shift_equivalence(a, &map()?, &weight()?)?,
        "thm:equivalence" => {
            let (kappa, _) = inp.masses(opts)?;
            verify_frobenius_equivalence(a, &map()?, &beta()?, &inp.form(opts)?, &kappa)?
        }
        "le:syco" => {
            let (lifted, base) = lifted_balanced_check(&inp.double(opts)?, &map()?)?;
            Report::from_checks(vec![IdentityCheck::verdict(
                "le:syco",
                lifted == base,
                format!("lifted={lifted} base={base}"),
            )])
        }
        "thm:skewgm" => {
            let (kappa, _) = inp.masses(opts)?;
            let b = match opts.beta {
                Some(_) => beta()?,
                None => LinearMap::zero(f, inp.double(opts)?.module().dim(), a.dim()),
            };
            verify_skewgm(&inp.double(opts)?, &map()?, &b, &kappa)?
        }
        "co:motoaybe1" => double_aybe_tests(a, &map()?, &weight()?)?,
        "thm:maybeequi" => {
            let c = gaybe_lift_conditions(&inp.double(opts)?, &map()?)?;
            Report::from_checks(vec![IdentityCheck::verdict("thm:maybeequi", c.agree(), format!("{c:?}"))])
        }
        "co:motoaybe2" => gaybe_o_conditions(&inp.context(opts)?, &map()?, &beta()?)?,
        _ => {
            return Err(LabError::Unknown {
                kind: "check target",
                name: target.to_string(),
            })
        }
    })
}

/// Construction names accepted by `construct`.
pub const CONSTRUCTIONS: &[&str] = &[
    "opposite",
    "dual-bimodule",
    "semidirect",
    "double",
    "matched-pair-sum",
    "star",
    "diamond",
    "dual-product",
    "aguiar",
    "frobenius-form",
    "tilde",
];

fn construct(target: &str, inp: &Inputs, opts: &Opts) -> Result<Bundle> {
    let a = &inp.algebra;
    let f = inp.field();
    let mut out = Bundle::new(f);
    let key = inp.name.clone();
    let map = || inp.map(opts.map.as_deref(), "--map");
    let table_algebra = |t: crate::algebra::ProductTable| Algebra::from_table(t);
    match target {
        "opposite" => {
            out.algebras.insert(format!("{key}_op"), a.opposite());
        }
        "dual-bimodule" => {
            let r = inp.bimodule_algebra(opts)?.unwrap_or_else(|| BimoduleAlgebra::regular(a));
            out.algebras.insert(key.clone(), a.clone());
            out.bimodules.insert(
                "dual".into(),
                NamedBimodule {
                    algebra: key,
                    module: dual_bimodule(r.module()),
                    product: None,
                },
            );
        }
        "semidirect" => {
            let r = inp.bimodule_algebra(opts)?.unwrap_or_else(|| BimoduleAlgebra::regular(a));
            out.algebras.insert(format!("{key}_semidirect"), crate::matched_pair::semidirect_sum(a, &r)?);
        }
        "double" => {
            out.algebras.insert(format!("{key}_double"), inp.double(opts)?.hat().clone());
        }
        "matched-pair-sum" => {
            let (ia, ib) = parse_split(opts.split.as_deref())?;
            out.algebras.insert(format!("{key}_sum"), matched_pair_sum(&split_algebra(a, &ia, &ib)?)?);
        }
        "star" => {
            let t = star_product(&inp.context(opts)?, &map()?)?;
            out.algebras.insert(format!("{key}_star"), table_algebra(t)?);
        }
        "diamond" => {
            let (p, m) = diamond_products(&inp.context(opts)?, &map()?)?;
            out.algebras.insert(format!("{key}_diamond_plus"), table_algebra(p)?);
            out.algebras.insert(format!("{key}_diamond_minus"), table_algebra(m)?);
        }
        "dual-product" => {
            out.algebras.insert(format!("{key}_dual"), table_algebra(dual_product(a, &inp.tensor(opts)?)?)?);
        }
        "aguiar" => {
            out.maps.insert("aguiar".into(), aguiar_map(a, &inp.tensor(opts)?)?);
        }
        "frobenius-form" => {
            out.algebras.insert(key.clone(), a.clone());
            out.forms.insert(
                "form".into(),
                NamedForm {
                    algebra: key,
                    form: form_from_invariant_tensor(a, &inp.tensor(opts)?)?,
                },
            );
        }
        "tilde" => {
            let d = inp.double(opts)?;
            let hat_key = format!("{key}_double");
            let (plus, minus) = d.tilde_pm(&map()?)?;
            out.algebras.insert(hat_key.clone(), d.hat().clone());
            for (n, t) in [("plus", plus), ("minus", minus)] {
                out.tensors.insert(
                    n.into(),
                    NamedTensor {
                        algebra: hat_key.clone(),
                        tensor: t,
                    },
                );
            }
        }
        _ => {
            return Err(LabError::Unknown {
                kind: "construction",
                name: target.to_string(),
            })
        }
    }
    Ok(out)
}

fn run_search(target: &str, opts: &Opts, out: &mut dyn Write) -> Result<bool> {
    if !crate::search::REGISTRY.contains(&target) {
        return Err(LabError::Unknown {
            kind: "predicate",
            name: target.to_string(),
        });
    }
    let inp = Inputs::load(opts)?;
    let f = inp.field();
    if !f.is_prime_field() {
        return Err(LabError::InvalidField("search needs a prime field; pass --field F<p>".into()));
    }
    let a = &inp.algebra;
    let mut params = PredicateParams::new(a.clone());
    params.weight = inp.scalar(opts.weight.as_deref())?;
    params.eaybe_mass = inp.scalar(opts.eaybe_mass.as_deref())?;
    if opts.bimodule.is_some() || opts.mass.is_some() {
        params.context = Some(inp.context(opts)?);
    }
    if let Some(b) = opts.beta.as_deref() {
        params.modification = Some(inp.bundle.map(b)?.clone());
    }
    let predicate = Predicate::by_name(target, &params)?;
    let space = match target {
        "aybe" | "aayb" | "eaybe" | "gaybe" | "operator_form" => SearchSpace::tensors(f, a.dim())?,
        "rb" => SearchSpace::maps(f, a.dim(), a.dim())?,
        _ => {
            let m = params.context.as_ref().map_or(a.dim(), |c| c.r.dim());
            SearchSpace::maps(f, m, a.dim())?
        }
    };
    let symmetry = if opts.skew {
        Symmetry::Skew
    } else if opts.symmetric {
        Symmetry::Symmetric
    } else {
        Symmetry::None
    };
    let space = space.with_symmetry(symmetry)?;
    let set = match opts.trials {
        Some(n) => search_random(&space, &predicate, n, opts.seed)?,
        None => search(
            &space,
            &predicate,
            SearchOptions::default().with_workers(workers(opts)).with_budget(budget(opts)?),
        )?,
    };
    if opts.json {
        writeln!(out, "{}", set.to_json())?;
    } else {
        let labels = a.labels();
        writeln!(
            out,
            "{} on {} over {}: {} solutions among {} candidates",
            set.predicate, inp.name, f, set.count, set.examined
        )?;
        for t in set.tensors() {
            writeln!(out, "  {}", render_tensor(&t, &labels))?;
        }
        for m in set.maps() {
            writeln!(out, "  {}", render_map(&m, &labels))?;
        }
    }
    Ok(true)
}

/// `Σ t_ij e_i⊗e_j` with basis labels, `0` for the zero tensor.
pub fn render_tensor(t: &Tensor2, labels: &[String]) -> String {
    let n = t.dim();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = t.get(i, j);
            if !c.is_zero() {
                terms.push((c.clone(), format!("{}⊗{}", labels[i], labels[j])));
            }
        }
    }
    join_terms(terms)
}

/// Images of the basis vectors, `f(e1) = ...; f(e2) = ...`.
pub fn render_map(m: &LinearMap, labels: &[String]) -> String {
    let src: Vec<String> = (1..=m.source_dim()).map(|i| format!("v{i}")).collect();
    let src = if m.source_dim() == labels.len() { labels.to_vec() } else { src };
    (0..m.source_dim())
        .map(|j| {
            let img = m.image(j);
            let terms = img
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), labels[i].clone()))
                .collect();
            format!("{} -> {}", src[j], join_terms(terms))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn join_terms(terms: Vec<(Scalar, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (c, b)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c };
        let coef = if mag.is_one() { String::new() } else { format!("{mag}·") };
        match (k, neg) {
            (0, false) => s.push_str(&format!("{coef}{b}")),
            (0, true) => s.push_str(&format!("-{coef}{b}")),
            (_, false) => s.push_str(&format!(" + {coef}{b}")),
            (_, true) => s.push_str(&format!(" - {coef}{b}")),
        }
    }
    s
}

fn run_verify(target: &str, opts: &Opts, out: &mut dyn Write) -> Result<bool> {
    if verify::describe(target).is_none() {
        return Err(LabError::Unknown {
            kind: "verify target",
            name: target.to_string(),
        });
    }
    let field = opts.field.unwrap_or(FieldSpec::Prime(3));
    let mut vo = VerifyOptions::new(field)
        .with_dims(opts.dim_a, opts.dim_v)
        .with_workers(workers(opts))
        .with_budget(budget(opts)?);
    if opts.exhaustive {
        vo = vo.with_mode(Mode::Exhaustive);
    } else if let Some(trials) = opts.trials {
        vo = vo.with_mode(Mode::Random { trials, seed: opts.seed });
    }
    if let Some(src) = opts.algebra.as_deref() {
        let bundle = open_bundle(src, Some(field))?;
        let (name, a) = bundle.pick_algebra(opts.algebra_name.as_deref())?;
        vo = vo.with_algebra(name.clone(), a.clone());
    }
    let summary = verify::verify(target, &vo)?;
    if opts.json {
        writeln!(out, "{}", summary.to_json())?;
    } else {
        writeln!(out, "{summary}")?;
    }
    Ok(summary.pass())
}

fn run_fixtures(write: Option<&Path>, check: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    let mut ok = true;
    for name in fixtures::NAMES {
        let text = fixtures::bundle(name, FieldSpec::Rationals)
            .expect("known fixture")
            .emit();
        let file = format!("{}.json", fixtures::file_stem(name));
        if let Some(dir) = write {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(&file), &text)?;
            writeln!(out, "wrote {}", dir.join(&file).display())?;
        }
        if let Some(dir) = check {
            let same = std::fs::read_to_string(dir.join(&file)).map(|t| t == text).unwrap_or(false);
            writeln!(out, "{} {}", if same { "ok  " } else { "DIFF" }, dir.join(&file).display())?;
            ok &= same;
        }
        if write.is_none() && check.is_none() {
            writeln!(out, "{name:<9} {file}")?;
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::tensor_as_map;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("ybelab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn zero_map_is_rota_baxter() {
        let (code, out, _) = run_args(&["check", "eq:rbo", "--algebra", "nil2", "--map", "P0", "--weight", "0"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn failing_check_exits_one() {
        let (code, out, _) = run_args(&["check", "eq:rbo", "--algebra", "nil2", "--map", "id", "--weight", "0"]);
        assert_eq!(code, 1);
        assert!(out.contains("witness"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["check", "eq:nope", "--algebra", "nil2"]).0, 2);
        assert_eq!(run_args(&["check", "eq:rbo", "--algebra", "no-such-file.json"]).0, 2);
        assert_eq!(run_args(&["verify", "thm:nope"]).0, 2);
    }

    #[test]
    fn renders_flagship_tensor() {
        let f = FieldSpec::Rationals;
        let t = Tensor2::from_entries(f, 3, &[(0, 1, 1), (1, 0, -1)]);
        let labels = fixtures::ut2(f).labels();
        assert_eq!(render_tensor(&t, &labels), "E11⊗E12 - E12⊗E11");
        let m = tensor_as_map(&t);
        assert!(render_map(&m, &labels).starts_with("E11 -> "));
    }

    #[test]
    fn list_names_every_target() {
        let (code, out, _) = run_args(&["verify", "--list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), TARGETS.len());
    }
}
