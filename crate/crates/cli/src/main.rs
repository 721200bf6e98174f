use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use serde::Serialize;

use qcat_core::diagonals::Diagonals;
use qcat_core::enriched::{
    cauchy_completion, closure, closure_report, validate_category, validate_distributor, validate_functor,
    EnrichedCategory, DEFAULT_SUBSET_BOUND,
};
use qcat_core::io::{self, Body, Document, Kind};
use qcat_core::parmet::{self, ExponentialVerdict, ExtValue, PartialMetricSpace, SampledSequence};
use qcat_core::properties::{check_cauchy_bilateral, check_strong_cauchy_bilateral, is_divisible};
use qcat_core::{analyze_properties, validate_quantaloid, PropertyReport, QcatError, Result, Witness};

#[derive(Parser)]
#[command(
    name = "qcat",
    version,
    about = "Checks finite quantaloids, enriched categories and partial metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural and axiom checks for any document.
    Validate(Flags),
    /// Property flags of a quantaloid.
    Analyze(Flags),
    /// The diagonal quantaloid of a quantaloid.
    Diagonals(Flags),
    /// Closure of a subset (`--set`) in a category or partial metric space.
    Closure(Flags),
    /// Closure against the closure in the symmetrised category.
    Symcompare(Flags),
    /// Cauchy completion of a category or finite partial metric space.
    Complete(Flags),
    /// Hausdorff space of typed subsets, or the sup-inf distance on given subsets.
    Hausdorff(Flags),
    /// Exponentiability scan on a rational grid.
    Exponentiable(Flags),
    /// Limits of a sampled sequence.
    Converge(Flags),
    /// Prints a built-in fixture document, or lists them.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Default)]
struct Flags {
    /// Input document; `fixture:NAME` loads a built-in fixture.
    #[arg(long = "in")]
    inputs: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Enumeration bound.
    #[arg(long)]
    bound: Option<u128>,
    /// Grid step, a rational.
    #[arg(long)]
    step: Option<String>,
    /// Grid cap (rational) or family-size cap (integer).
    #[arg(long)]
    cap: Option<String>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Tolerance, a rational.
    #[arg(long)]
    eps: Option<String>,
    /// Comma-separated names; may repeat.
    #[arg(long = "set")]
    sets: Vec<String>,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Vec<String>,
    verdicts: PropertyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    properties: Option<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<Document>,
    timing_ms: u128,
}

impl Report {
    fn new(command: &str, flags: &Flags) -> Report {
        Report {
            command: command.into(),
            inputs: flags.inputs.clone(),
            verdicts: PropertyReport::new(),
            properties: None,
            output: None,
            timing_ms: 0,
        }
    }
}

fn usage(msg: impl Into<String>) -> QcatError {
    QcatError::InvalidArgument(msg.into())
}

fn load(spec: &str) -> Result<Document> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return io::fixture(name);
    }
    let text = std::fs::read_to_string(PathBuf::from(spec)).map_err(|e| usage(format!("cannot read {spec}: {e}")))?;
    Document::parse(&text)
}

fn single(flags: &Flags) -> Result<Document> {
    match flags.inputs.as_slice() {
        [one] => load(one),
        [] => Err(usage("an input is required (--in FILE)")),
        _ => Err(usage("exactly one input is expected")),
    }
}

fn rational(flag: &Option<String>, default: &str, what: &str) -> Result<BigRational> {
    let text = flag.as_deref().unwrap_or(default);
    text.parse::<ExtValue>()
        .ok()
        .and_then(|v| v.finite().cloned())
        .ok_or_else(|| usage(format!("{what} must be a nonnegative rational, got {text:?}")))
}

fn name_sets(flags: &Flags) -> Vec<Vec<String>> {
    flags
        .sets
        .iter()
        .map(|s| {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(String::from)
                .collect()
        })
        .collect()
}

fn one_set(flags: &Flags) -> Result<Vec<String>> {
    let sets = name_sets(flags);
    if sets.is_empty() {
        return Err(usage("a subset is required (--set NAMES)"));
    }
    Ok(sets.concat())
}

fn to_refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn set_text(names: &[String], idx: &[usize]) -> String {
    let parts: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn limit_text(v: &Option<ExtValue>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), ExtValue::to_string)
}

fn values_text(vs: &[ExtValue]) -> String {
    let parts: Vec<String> = vs.iter().map(ExtValue::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn validate(flags: &Flags, rep: &mut Report) -> Result<()> {
    let doc = single(flags)?;
    match doc.kind {
        Kind::Quantaloid => rep.verdicts = validate_quantaloid(&doc.quantaloid()?),
        Kind::Category => rep.verdicts = validate_category(&doc.category()?),
        Kind::Functor => {
            let f = doc.functor()?;
            rep.verdicts.extend("dom-", validate_category(&f.dom));
            rep.verdicts.extend("cod-", validate_category(&f.cod));
            rep.verdicts.extend("", validate_functor(&f));
        }
        Kind::Distributor => {
            let d = doc.distributor()?;
            rep.verdicts.extend("dom-", validate_category(&d.dom));
            rep.verdicts.extend("cod-", validate_category(&d.cod));
            rep.verdicts.extend("", validate_distributor(&d));
        }
        Kind::Pms | Kind::Sequence => rep.verdicts = parmet::validate_pms(&doc.pms()?),
    }
    Ok(())
}

fn analyze(flags: &Flags, rep: &mut Report) -> Result<()> {
    let q = single(flags)?.quantaloid()?;
    rep.verdicts = validate_quantaloid(&q);
    if !rep.verdicts.ok() {
        return Ok(());
    }
    let mut props = analyze_properties(&q);
    if q.has_involution() {
        let strong = check_strong_cauchy_bilateral(&q)?;
        props.record("strongly-cauchy-bilateral", strong.witness.map(|f| f.to_witness(&q)));
        let cap = match &flags.cap {
            Some(c) => c
                .parse()
                .map_err(|_| usage(format!("--cap must be a positive integer, got {c:?}")))?,
            None => 12,
        };
        let ordinary = check_cauchy_bilateral(&q, cap)?;
        if ordinary.holds {
            let scope = if ordinary.exact {
                "exhaustive".to_string()
            } else {
                format!("families up to {cap} pairs")
            };
            props.note("cauchy-bilateral-search", scope);
        }
        props.record("cauchy-bilateral", ordinary.witness.map(|f| f.to_witness(&q)));
    }
    rep.properties = Some(props);
    Ok(())
}

fn diagonals(flags: &Flags, rep: &mut Report) -> Result<()> {
    let q = single(flags)?.quantaloid()?;
    let base = validate_quantaloid(&q);
    if !base.ok() {
        rep.verdicts = base;
        return Ok(());
    }
    let dg = Diagonals::new(q.clone());
    let d = dg.d();
    rep.verdicts.extend("diagonal-", validate_quantaloid(d));
    let (dq, ddq) = (is_divisible(&q), is_divisible(d));
    let transfer = (dq != ddq).then(|| {
        Witness::new()
            .text("divisible(Q)", dq.to_string())
            .text("divisible(D(Q))", ddq.to_string())
    });
    rep.verdicts.record("divisibility-transfer", transfer);
    rep.verdicts.note("objects", d.n_objects().to_string());
    rep.output = Some(Document::new(
        Kind::Quantaloid,
        &format!("diagonals of {}", flags.inputs[0]),
        "diagonal quantaloid",
        Body::Quantaloid(io::quantaloid_body(d)),
    ));
    Ok(())
}

fn category_closure(c: &EnrichedCategory, names: &[String], bound: usize, rep: &mut Report) -> Result<()> {
    let s = c.subset(&to_refs(names))?;
    let cl = closure(c, &s)?;
    rep.verdicts.note("closure", set_text(c.names(), &cl));
    if c.len() <= bound {
        rep.verdicts.extend("", closure_report(c, bound)?);
    } else {
        rep.verdicts
            .note("laws", format!("skipped: {} objects exceed the bound {bound}", c.len()));
    }
    Ok(())
}

fn closure_cmd(flags: &Flags, rep: &mut Report) -> Result<()> {
    let doc = single(flags)?;
    let names = one_set(flags)?;
    match doc.kind {
        Kind::Category => {
            let bound = flags.bound.map_or(DEFAULT_SUBSET_BOUND, |b| b as usize);
            category_closure(&doc.category()?, &names, bound, rep)
        }
        Kind::Pms => {
            let x = doc.pms()?;
            let s = x.subset(&to_refs(&names))?;
            let cl = parmet::closure_set(&x, &s)?;
            let sym = parmet::metric_closure(&parmet::derived_metrics(&x).psym, &s);
            rep.verdicts.note("closure", set_text(x.names(), &cl));
            rep.verdicts.note("symmetric-metric-closure", set_text(x.names(), &sym));
            let diff = (cl != sym).then(|| {
                Witness::new()
                    .text("closure", set_text(x.names(), &cl))
                    .text("metric-closure", set_text(x.names(), &sym))
            });
            rep.verdicts.record("agrees-with-symmetric-metric-closure", diff);
            Ok(())
        }
        _ => Err(usage("closure expects a category or pms document")),
    }
}

fn symcompare(flags: &Flags, rep: &mut Report) -> Result<()> {
    let c = single(flags)?.category()?;
    let names = one_set(flags)?;
    let s = c.subset(&to_refs(&names))?;
    let cl = closure(&c, &s)?;
    let cls = closure(&c.symmetrize()?, &s)?;
    rep.verdicts.note("closure", set_text(c.names(), &cl));
    rep.verdicts.note("symmetric-closure", set_text(c.names(), &cls));
    let diff: Vec<usize> = cl.iter().copied().filter(|x| !cls.contains(x)).collect();
    let witness = (cl != cls).then(|| {
        Witness::new().with(
            "x",
            qcat_core::WitnessValue::Points(diff.clone()),
            set_text(c.names(), &diff),
        )
    });
    rep.verdicts.record("closure-equals-symmetric-closure", witness);
    Ok(())
}

fn complete(flags: &Flags, rep: &mut Report) -> Result<()> {
    let doc = single(flags)?;
    match doc.kind {
        Kind::Pms => {
            let x = doc.pms()?;
            let comp = parmet::complete_finite(&x)?;
            rep.verdicts.extend("completion-", parmet::validate_pms(&comp.space));
            let stretched = x
                .points()
                .flat_map(|a| x.points().map(move |b| (a, b)))
                .find(|&(a, b)| comp.space.p(comp.embedding[a], comp.embedding[b]) != x.p(a, b))
                .map(|(a, b)| Witness::new().text("y", x.name(a)).text("x", x.name(b)));
            rep.verdicts.record("embedding-isometric", stretched);
            rep.verdicts.note("points", comp.space.names().join(" "));
            rep.output = Some(Document::new(
                Kind::Pms,
                &format!("completion of {}", flags.inputs[0]),
                "classes of Cauchy pairs plus a point of type inf",
                Body::Pms(io::pms_body(&comp.space)),
            ));
            Ok(())
        }
        Kind::Category => {
            let c = Arc::new(doc.category()?);
            let cc = cauchy_completion(&c, flags.bound.unwrap_or(1_000_000))?;
            rep.verdicts.extend("completion-", validate_category(&cc.category));
            let y = cc.yoneda()?;
            let ff = (!y.is_fully_faithful()).then(|| Witness::new().text("functor", "Yoneda"));
            rep.verdicts.record("yoneda-fully-faithful", ff);
            rep.verdicts.note("objects", cc.category.names().join(" "));
            rep.output = Some(Document::new(
                Kind::Category,
                &format!("Cauchy completion of {}", flags.inputs[0]),
                "Cauchy presheaves",
                Body::Category(io::category_body(&cc.category, None)),
            ));
            Ok(())
        }
        _ => Err(usage("complete expects a category or pms document")),
    }
}

fn hausdorff(flags: &Flags, rep: &mut Report) -> Result<()> {
    let x = single(flags)?.pms()?;
    let sets = name_sets(flags);
    if sets.is_empty() {
        let h = parmet::hausdorff(&x)?;
        rep.verdicts = parmet::validate_pms(&h);
        rep.verdicts.note("points", h.names().join(" "));
        rep.output = Some(Document::new(
            Kind::Pms,
            &format!("typed subsets of {}", flags.inputs[0]),
            "sup-inf distance on typed subsets",
            Body::Pms(io::pms_body(&h)),
        ));
    } else {
        let subsets = sets.iter().map(|s| x.subset(&to_refs(s))).collect::<Result<Vec<_>>>()?;
        let u = parmet::subset_space(&x, &subsets)?;
        rep.verdicts = parmet::validate_pms(&u);
        rep.output = Some(Document::new(
            Kind::Pms,
            &format!("given subsets of {}", flags.inputs[0]),
            "sup-inf distance on the given subsets",
            Body::Pms(io::pms_body(&u)),
        ));
    }
    Ok(())
}

fn exponentiable(flags: &Flags, rep: &mut Report) -> Result<()> {
    let x = single(flags)?.pms()?;
    let step = rational(&flags.step, "1/2", "--step")?;
    let cap = rational(&flags.cap, "3", "--cap")?;
    let verdict = parmet::exponentiable(&x, &step, &cap)?;
    rep.verdicts.note("verdict", verdict.label());
    let witness = match &verdict {
        ExponentialVerdict::NotExponentiable(w) => Some(
            Witness::new()
                .text("x0", x.name(w.x0))
                .text("x2", x.name(w.x2))
                .text("u", w.u.to_string())
                .text("v", w.v.to_string())
                .text("w", w.w.to_string()),
        ),
        ExponentialVerdict::NoViolationOnGrid { .. } => {
            rep.verdicts.note("grid", format!("[0,{cap}] in steps of {step}"));
            None
        }
        ExponentialVerdict::ExponentiableExact => None,
    };
    rep.verdicts.record("exponentiable", witness);
    Ok(())
}

fn converge(flags: &Flags, rep: &mut Report) -> Result<()> {
    let doc = single(flags)?;
    let mut body = match doc.body {
        Body::Sequence(b) => b,
        _ => return Err(usage("converge expects a sequence document")),
    };
    if let Some(h) = flags.horizon {
        body.horizon = h;
    }
    if let Some(e) = &flags.eps {
        body.eps = e.clone();
    }
    let (x, s): (PartialMetricSpace, SampledSequence<usize>) = io::sequence_from_body(&body)?;
    let ty = parmet::seq_type(&x, &s)?;
    rep.verdicts.note("type", limit_text(&ty.value));
    rep.verdicts.note(
        "certainty",
        if ty.certainty.is_exact() {
            "exact".to_string()
        } else {
            format!("approximate (N={}, eps={})", s.horizon(), s.eps())
        },
    );
    let cauchy = parmet::seq_cauchy(&x, &s)?;
    let limits = |v: &parmet::SeqVerdict| {
        v.limits
            .iter()
            .fold(Witness::new(), |w, (name, l)| w.text(name, limit_text(l)))
    };
    rep.verdicts.record("cauchy", (!cauchy.holds).then(|| limits(&cauchy)));
    if let Some(n0) = cauchy.stabilization {
        rep.verdicts.note("stabilization", n0.to_string());
    }
    for names in name_sets(flags) {
        for name in names {
            let a = x.find(&name).ok_or_else(|| usage(format!("no point named {name}")))?;
            let v = parmet::converges_to(&x, &s, &a)?;
            rep.verdicts
                .record(&format!("converges-to-{name}"), (!v.holds).then(|| limits(&v)));
        }
    }
    if cauchy.holds {
        let pair = parmet::seq_to_cauchy_pair(&x, &s)?;
        rep.verdicts.note("pair-q", pair.q.to_string());
        rep.verdicts.note("pair-phi", values_text(&pair.phi));
        rep.verdicts.note("pair-psi", values_text(&pair.psi));
        rep.verdicts.extend("pair-", parmet::validate_cauchy_pair(&x, &pair));
        let rebuilt = parmet::cauchy_pair_to_sequence(&x, &pair, s.horizon(), s.eps().clone())?;
        let eq = parmet::seq_equivalent(&x, &s, &rebuilt)?;
        rep.verdicts
            .record("reconstruction-equivalent", (!eq.holds).then(|| limits(&eq)));
    }
    Ok(())
}

fn print(rep: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(rep).expect("reports serialize"));
        return;
    }
    println!("{} {}", rep.command, rep.inputs.join(" "));
    print!("{}", rep.verdicts);
    if let Some(p) = &rep.properties {
        println!("properties:");
        print!("{p}");
    }
    if let Some(doc) = &rep.output {
        println!("output:");
        print!("{}", doc.emit());
    }
    eprintln!("time: {} ms", rep.timing_ms);
}

type Action = fn(&Flags, &mut Report) -> Result<()>;

fn run(cli: Cli) -> Result<ExitCode> {
    let (name, flags, action): (&str, Flags, Action) = match cli.command {
        Command::Fixtures { name: None, json } => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(io::FIXTURE_NAMES).expect("names serialize")
                );
            } else {
                io::FIXTURE_NAMES.iter().for_each(|n| println!("{n}"));
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Fixtures { name: Some(n), .. } => {
            print!("{}", io::fixture(&n)?.emit());
            return Ok(ExitCode::SUCCESS);
        }
        Command::Validate(f) => ("validate", f, validate),
        Command::Analyze(f) => ("analyze", f, analyze),
        Command::Diagonals(f) => ("diagonals", f, diagonals),
        Command::Closure(f) => ("closure", f, closure_cmd),
        Command::Symcompare(f) => ("symcompare", f, symcompare),
        Command::Complete(f) => ("complete", f, complete),
        Command::Hausdorff(f) => ("hausdorff", f, hausdorff),
        Command::Exponentiable(f) => ("exponentiable", f, exponentiable),
        Command::Converge(f) => ("converge", f, converge),
    };
    let start = Instant::now();
    let mut rep = Report::new(name, &flags);
    action(&flags, &mut rep)?;
    rep.timing_ms = start.elapsed().as_millis();
    print(&rep, flags.json);
    Ok(if rep.verdicts.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
