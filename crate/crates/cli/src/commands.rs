use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;
use std::sync::Arc;

use crate::args::{
    parse_range, Cli, Command, CurveArgs, ExtremalArgs, HurAction, K3Args, QuadricArgs, RunConfig,
    ScrollArgs,
};
use crate::report::Report;
use crate::store::DiskStore;
use syzlab_core::curvelab::{
    certify_smooth_ordinary, derive_seed, impose_nodes, minimal_pencils, random_node_points,
    type_i_check, CurveFile, CurveModel, Pencil,
};
use syzlab_core::hurcalc::{self, GrrReading, IdentityReport};
use syzlab_core::k3cert::{self, CertStatus, SearchBox};
use syzlab_core::koszul::{
    betti_table, extremal_check, multi_prime_strand, BettiStrand, StrandMethod,
};
use syzlab_core::quadrics::{
    check_quadric, general_position_check, iterated_projection_to_quadric, pencil_quadric,
    projection_center,
};
use syzlab_core::scrolls::{
    en_strand_formula, minor_report, rational_normal_scroll, restriction_span_dim, scroll_matrix,
    scroll_strand, JReport,
};
use syzlab_core::{Ambient, Degree, PrimeField};

pub fn run(cli: &Cli) -> Result<Report> {
    let cfg = RunConfig::from_cli(cli)?;
    run_command(&cfg, &cli.command)
}

pub fn run_command(cfg: &RunConfig, command: &Command) -> Result<Report> {
    match command {
        Command::Betti(source) => cmd_betti(cfg, source),
        Command::VerifyExtremal(args) => cmd_verify_extremal(cfg, args),
        Command::Scrolls(args) => cmd_scrolls(cfg, args),
        Command::Quadrics(args) => cmd_quadrics(cfg, args),
        Command::K3cert(args) => Ok(cmd_k3cert(args)),
        Command::Hurcalc { action } => cmd_hurcalc(action),
        Command::Batch { file } => cmd_batch(file),
    }
}

fn curve_inputs(cfg: &RunConfig, source: &CurveArgs) -> serde_json::Value {
    json!({
        "plane": source.plane,
        "bidegree": source.bidegree,
        "curve": source.curve.as_ref().map(|p| p.display().to_string()),
        "nodes": source.nodes,
        "method": format!("{:?}", source.method).to_lowercase(),
        "primes": cfg.primes,
        "seed": cfg.seed,
    })
}

/// One model per prime. Generated curves are reductions of one integral form.
pub fn build_curves(cfg: &RunConfig, source: &CurveArgs) -> Result<Vec<CurveModel>> {
    let mut curves = if let Some(path) = &source.curve {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: CurveFile = serde_json::from_str(&text).map_err(|e| {
            anyhow!(
                "{}: parse error at line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            )
        })?;
        let base = CurveModel::from_file(&file)?;
        let primes = if cfg.primes_given {
            cfg.primes.clone()
        } else {
            vec![file.prime]
        };
        primes
            .iter()
            .map(|&p| {
                if p == base.prime() {
                    Ok(base.clone())
                } else {
                    base.reduce_mod(p)
                }
            })
            .collect::<syzlab_core::Result<Vec<_>>>()?
    } else {
        let degree = match (&source.plane, &source.bidegree) {
            (Some(d), None) => Degree::Plane(*d),
            (None, Some(ab)) => Degree::Bi(ab[0], ab[1]),
            _ => bail!("give one of --plane, --bidegree or --curve"),
        };
        let node_prime = *cfg.primes.iter().min().expect("at least one prime");
        let nodes = random_node_points(source.nodes, node_prime, cfg.seed);
        cfg.primes
            .iter()
            .map(|&p| impose_nodes(degree, &nodes, p, cfg.seed))
            .collect::<syzlab_core::Result<Vec<_>>>()?
    };
    if let Some(dir) = &cfg.cache {
        let store = Arc::new(DiskStore::new(dir)?);
        curves = curves
            .into_iter()
            .map(|c| c.with_store(store.clone()))
            .collect();
    }
    Ok(curves)
}

fn describe_curve(report: &mut Report, c: &CurveModel) {
    report.set("degree", c.degree().to_string());
    report.set("ambient", c.ambient());
    report.set("arithmetic_genus", c.genus());
    report.set("geometric_genus", c.geometric_genus());
    report.set("node_count", c.nodes().len());
    report.set("content_hash", c.content_hash());
}

fn strand_for(
    report: &mut Report,
    curves: &[CurveModel],
    method: StrandMethod,
) -> Result<BettiStrand> {
    let strand = report.time("strand", || multi_prime_strand(curves, method))?;
    report.set("strand", &strand.values);
    report.set("runs", &strand.runs);
    if curves.len() > 1 {
        report.check(
            "prime agreement",
            strand.consistent,
            format!("{} primes", curves.len()),
        );
    }
    if !strand.consistent {
        report.flag("prime disagreement");
    }
    Ok(strand)
}

pub fn cmd_betti(cfg: &RunConfig, source: &CurveArgs) -> Result<Report> {
    let mut report = Report::new("betti", curve_inputs(cfg, source));
    let curves = report.time("generate", || build_curves(cfg, source))?;
    describe_curve(&mut report, &curves[0]);
    let strand = strand_for(&mut report, &curves, source.method.into())?;
    let table = betti_table(&strand)?;
    report.check(
        "hilbert relation",
        table.hilbert_holds(),
        "antidiagonals 0..=g+3",
    );
    report.check("duality", table.duality_holds(), "b_{p,2} = b_{g-2-p,1}");
    report.set("last_nonzero", strand.last_nonzero());
    report.set("table", &table.rows);
    report.set("table_ascii", table.render());
    Ok(report)
}

/// Gonality and number of minimal pencils of the model.
fn pencil_data(c: &CurveModel) -> Result<(usize, Vec<Pencil>)> {
    match c.degree() {
        Degree::Bi(..) => {
            let pencils = minimal_pencils(c)?;
            Ok((pencils[0].degree, pencils))
        }
        Degree::Plane(d) => Ok((d as usize - 1, Vec::new())),
    }
}

fn ruling_checks(report: &mut Report, c: &CurveModel, pencils: &[Pencil]) -> Result<()> {
    let mut branch = Vec::new();
    for p in pencils {
        let b = report.time("discriminant", || certify_smooth_ordinary(c, p.axis))?;
        if c.nodes().is_empty() {
            report.check(
                &format!("simple branching {:?}", p.axis),
                b.squarefree,
                format!(
                    "{} distinct branch points of {}",
                    b.distinct_branch_points, b.homogeneous_degree
                ),
            );
        }
        let type_i = type_i_check(c, p.twist)?;
        report.check(&format!("type I {:?}", p.axis), type_i, "h^0(L^2) = 3");
        branch.push(b);
    }
    report.set("branch", branch);
    Ok(())
}

fn scroll_span(report: &mut Report, c: &CurveModel, pencils: &[Pencil]) -> Result<JReport> {
    let scrolls = report.time("scrolls", || {
        pencils
            .iter()
            .map(|p| scroll_matrix(c, p))
            .collect::<syzlab_core::Result<Vec<_>>>()
    })?;
    let minors = scrolls
        .iter()
        .map(|s| minor_report(c, s))
        .collect::<syzlab_core::Result<Vec<_>>>()?;
    report.check(
        "scroll minors vanish",
        minors.iter().all(|m| m.all_vanish),
        "2 x 2 minors in the ideal",
    );
    report.set("minors", minors);
    let j = report.time("restriction span", || restriction_span_dim(c, &scrolls))?;
    report.check(
        "scroll containment",
        j.containment_ok,
        "scroll syzygies restrict to the curve",
    );
    report.check(
        "restriction injective",
        j.injective,
        format!("prefix spans {:?}", j.prefix_spans),
    );
    report.check(
        "restriction isomorphism",
        j.isomorphism,
        format!(
            "span {} against b_{{{},1}} = {}",
            j.span_dim, j.p, j.curve_value
        ),
    );
    report.set("restriction", &j);
    Ok(j)
}

fn quadric_pipeline(
    report: &mut Report,
    c: &CurveModel,
    pencils: &[Pencil],
    j: &JReport,
    samples: usize,
    seed: u64,
) -> Result<()> {
    let g = c.genus();
    let k = pencils[0].degree;
    let center = report.time("quadrics", || {
        projection_center(c, g - 1 - k, pencils, derive_seed(seed, "center"))
    })?;
    if center.attempts > 1 {
        report.flag(format!(
            "projection center resampled {} times",
            center.attempts - 1
        ));
    }
    let field = c.field();
    let mut quadrics = Vec::new();
    let mut per = Vec::new();
    for (i, p) in pencils.iter().enumerate() {
        let q = pencil_quadric(c, p, &center, i)?;
        let chk = check_quadric(c, &center, &q, samples, seed)?;
        report.check(
            &format!("quadric {i} rank 4"),
            chk.rank == 4,
            format!("rank {}", chk.rank),
        );
        report.check(
            &format!("quadric {i} vanishes"),
            chk.vanishes_on_points && chk.in_kernel,
            format!("{} points and kernel membership", chk.points_tested),
        );
        per.push(chk);
        quadrics.push(q);
    }
    report.check(
        "quadric span",
        general_position_check(field, &quadrics),
        format!("{} independent quadrics", quadrics.len()),
    );
    let scalars = report.time("projection", || {
        iterated_projection_to_quadric(c, &quadrics, &j.extremal_classes, j.p, &center)
    })?;
    report.check(
        "projections in quadric span",
        scalars.all_in_span,
        "each image is a multiple of its own quadric",
    );
    report.check("nonzero image per pencil", scalars.each_pencil_nonzero, "");
    report.check(
        "projection cocycles",
        scalars.cocycles_ok && scalars.leading_residuals_zero,
        "",
    );
    report.set("quadric_checks", per);
    report.set("quadrics", &quadrics);
    report.set("projection", scalars);
    Ok(())
}

pub fn cmd_verify_extremal(cfg: &RunConfig, args: &ExtremalArgs) -> Result<Report> {
    let mut inputs = curve_inputs(cfg, &args.curve);
    inputs["gonality"] = json!(args.gonality);
    inputs["pencils"] = json!(args.pencils);
    let mut report = Report::new("verify-extremal", inputs);
    let curves = report.time("generate", || build_curves(cfg, &args.curve))?;
    let c = &curves[0];
    describe_curve(&mut report, c);
    let (k0, pencils) = pencil_data(c)?;
    let k = args.gonality.unwrap_or(k0);
    let m = args.pencils.unwrap_or(pencils.len().max(1));
    report.set("gonality", k);
    report.set("pencil_count", m);
    if c.ambient() == Ambient::P1xP1 {
        ruling_checks(&mut report, c, &pencils)?;
    }
    let strand = strand_for(&mut report, &curves, args.curve.method.into())?;
    let ext = extremal_check(&strand, k, m);
    report.check(
        "extremal equality",
        ext.equal,
        format!(
            "b_{{{},1}} = {} against m(g-k) = {}",
            ext.index, ext.value, ext.predicted
        ),
    );
    report.check(
        "strand length",
        ext.strand_length_ok,
        format!("b_{{p,1}} = 0 for p > {}", ext.index),
    );
    report.set("extremal", &ext);
    if let Ok(table) = betti_table(&strand) {
        report.check(
            "hilbert relation",
            table.hilbert_holds(),
            "antidiagonals 0..=g+3",
        );
        report.set("table_ascii", table.render());
    }
    if c.ambient() == Ambient::P1xP1 && !args.skip_scrolls {
        let j = scroll_span(&mut report, c, &pencils)?;
        if !args.skip_quadrics {
            quadric_pipeline(&mut report, c, &pencils, &j, args.samples, cfg.seed)?;
        }
    }
    Ok(report)
}

pub fn cmd_quadrics(cfg: &RunConfig, args: &QuadricArgs) -> Result<Report> {
    let mut report = Report::new("quadrics", curve_inputs(cfg, &args.curve));
    let curves = build_curves(cfg, &args.curve)?;
    let c = &curves[0];
    describe_curve(&mut report, c);
    if c.ambient() != Ambient::P1xP1 {
        bail!("quadrics needs a curve on P1xP1");
    }
    let pencils = minimal_pencils(c)?;
    let j = scroll_span(&mut report, c, &pencils)?;
    quadric_pipeline(&mut report, c, &pencils, &j, args.samples, cfg.seed)?;
    Ok(report)
}

fn scroll_types(f: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![f / 2, f - f / 2]];
    if f >= 3 {
        out.push(vec![f / 3, (f + 1) / 3, f.div_ceil(3)]);
    }
    out.retain(|t| !t.contains(&0));
    out
}

pub fn cmd_scrolls(cfg: &RunConfig, args: &ScrollArgs) -> Result<Report> {
    let mut inputs = curve_inputs(cfg, &args.curve);
    inputs["parts"] = json!(args.parts);
    inputs["en_range"] = json!(args.en_range);
    let mut report = Report::new("scrolls", inputs);
    if args.curve.given() {
        let curves = build_curves(cfg, &args.curve)?;
        let c = &curves[0];
        describe_curve(&mut report, c);
        let pencils = minimal_pencils(c)?;
        scroll_span(&mut report, c, &pencils)?;
        return Ok(report);
    }
    let mut types = Vec::new();
    if let Some(parts) = &args.parts {
        types.push(parts.clone());
    }
    if let Some(r) = &args.en_range {
        for f in parse_range(r)? {
            anyhow::ensure!(f >= 2, "scroll degree must be at least 2");
            types.extend(scroll_types(f as usize));
        }
    }
    if types.is_empty() {
        types = (2..=8).flat_map(scroll_types).collect();
    }
    let rows = report.time("scroll strands", || {
        types
            .par_iter()
            .map(|parts| {
                let per_prime = cfg
                    .primes
                    .iter()
                    .map(|&p| {
                        let field = PrimeField::new(p)?;
                        scroll_strand(&field, &rational_normal_scroll(&field, parts)?)
                            .map(|s| s.values)
                    })
                    .collect::<syzlab_core::Result<Vec<_>>>();
                (parts.clone(), per_prime)
            })
            .collect::<Vec<_>>()
    });
    let mut out = Vec::new();
    for (parts, res) in rows {
        let f: usize = parts.iter().sum();
        let expected: Vec<u64> = (1..f).map(|p| en_strand_formula(f, p)).collect();
        match res {
            Ok(values) => {
                let ok = values.iter().all(|v| v[..f - 1] == expected[..]);
                report.check(
                    &format!("scroll {parts:?}"),
                    ok,
                    format!("strand {:?}", values[0]),
                );
                out.push(
                    json!({"parts": parts, "degree": f, "strand": values[0], "expected": expected}),
                );
            }
            Err(e) => report.check(&format!("scroll {parts:?}"), false, e.to_string()),
        }
    }
    report.set("scrolls", out);
    Ok(report)
}

pub fn cmd_k3cert(args: &K3Args) -> Report {
    let (g, k) = (args.genus, args.gonality);
    let mut report = Report::new("k3cert", json!({"g": g, "k": k, "wide": args.wide}));
    let cert = report.time("search", || k3cert::bpf_certificate(g, k));
    let status = cert.summary.status;
    report.set("status", status);
    report.set("discriminant", cert.discriminant);
    report.set("signature_ok", cert.signature_ok);
    report.set("certificate", &cert);
    report.set("keem", k3cert::keem_advisory(g, k));
    match status {
        CertStatus::HypothesesNotMet => {
            let missing: Vec<&str> = cert
                .summary
                .hypotheses
                .iter()
                .filter(|h| !h.1)
                .map(|h| h.0.as_str())
                .collect();
            report.flag(format!("hypotheses not met: {}", missing.join(", ")));
        }
        _ => {
            report.check(
                "bpf certificate",
                status == CertStatus::Certified,
                format!("{} violators", cert.summary.violators.len()),
            );
            if args.wide {
                let wide = report.time("wide search", || {
                    k3cert::bpf_certificate_with(g, k, SearchBox::WIDE, SearchBox::WIDE)
                });
                report.check(
                    "wide box agrees",
                    wide.summary.status == status
                        && wide.summary.violators == cert.summary.violators,
                    "a up to 6, b up to 3k",
                );
            }
        }
    }
    report
}

fn identity_value(rep: &IdentityReport) -> serde_json::Value {
    json!({
        "identity": rep.identity,
        "k_range": rep.k_range,
        "passed": rep.passed,
        "residuals": rep.rows.iter().map(|r| json!({"k": r.k, "residual": r.residual.as_strings(), "computed": r.computed.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn cmd_hurcalc(action: &HurAction) -> Result<Report> {
    let HurAction::Verify {
        identity,
        k_range,
        reading,
    } = action;
    let ks = parse_range(k_range)?;
    anyhow::ensure!(*ks.start() >= 3, "identities are stated for k >= 3");
    let mut report = Report::new(
        "hurcalc",
        json!({"identity": identity, "k_range": k_range, "reading": reading}),
    );
    let all = identity == "all";
    let mut known = false;
    let push = |report: &mut Report, rep: IdentityReport| {
        report.check(
            &rep.identity,
            rep.passed,
            format!("k = {}..={}", rep.k_range.0, rep.k_range.1),
        );
        report.set(&rep.identity.clone(), identity_value(&rep));
    };
    if all || identity == "alternating-sum" {
        known = true;
        push(&mut report, hurcalc::verify_alternating_sum(ks.clone()));
    }
    if all || identity == "bundle-sum" {
        known = true;
        push(&mut report, hurcalc::verify_bundle_sum(ks.clone()));
    }
    if all || identity == "normal-bundle" {
        known = true;
        push(&mut report, hurcalc::normal_bundle_identity(ks.clone()));
    }
    if all || identity == "base-case" {
        known = true;
        push(&mut report, hurcalc::verify_base_case(ks.clone()));
    }
    if all || identity == "rank" {
        known = true;
        let rows: Vec<_> = ks
            .clone()
            .map(|k| hurcalc::verify_rank_identity(k, 2))
            .collect();
        report.check(
            "rank",
            rows.iter().all(|r| r.holds),
            "(4k-2)C(2k-2,k) = (2k-2)C(2k-1,k)",
        );
        report.set("rank", rows);
    }
    if all || identity == "hur-class" {
        known = true;
        let rows: Vec<_> = ks.clone().map(hurcalc::derive_hur_class).collect();
        report.check(
            "hur-class",
            rows.iter().all(|r| r.base_residual.is_zero()),
            "W[1] - V[1] = (k-1)(hur - N)",
        );
        report.set(
            "hur-class",
            rows.iter()
                .map(|r| json!({"k": r.k, "hur": r.hur.as_strings(), "display": r.hur.to_string()}))
                .collect::<Vec<_>>(),
        );
    }
    if all || identity == "lambda-relation" {
        known = true;
        report.set(
            "lambda-relation",
            ks.clone()
                .map(|k| json!({"k": k, "lambda": hurcalc::lambda_relation(k).as_strings()}))
                .collect::<Vec<_>>(),
        );
    }
    if identity == "grr" {
        known = true;
        let name = reading.as_deref().unwrap_or("corrected");
        let r = GrrReading::parse(name).ok_or_else(|| anyhow!("unknown reading {name}"))?;
        let rep = hurcalc::grr_report(ks.clone(), r);
        report.check("grr", rep.closes, format!("reading {name}"));
        report.set("grr", rep.rows.iter().map(|row| json!({"k": row.k, "residual": row.residual.as_strings(), "display": row.residual.to_string()})).collect::<Vec<_>>());
    }
    if identity == "grr-forensics" {
        known = true;
        let reps = hurcalc::grr_forensics();
        report.set(
            "grr-forensics",
            reps.iter()
                .map(|r| json!({"reading": r.reading.name(), "closes": r.closes, "k3_residual": r.rows[0].residual.to_string()}))
                .collect::<Vec<_>>(),
        );
    }
    if !known {
        bail!("unknown identity {identity}");
    }
    Ok(report)
}

/// Splits a batch line into arguments, honouring double quotes.
fn split_line(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn cmd_batch(path: &std::path::Path) -> Result<Report> {
    use clap::Parser;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let jobs: Vec<(usize, Vec<String>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| (i, split_line(l)))
        .collect();
    let mut report = Report::new(
        "batch",
        json!({"file": path.display().to_string(), "jobs": jobs.len()}),
    );
    let children: Vec<Report> = jobs
        .par_iter()
        .map(|(line, argv)| {
            let parsed = Cli::try_parse_from(
                std::iter::once("syzlab".to_string()).chain(argv.iter().cloned()),
            );
            let result = parsed.map_err(anyhow::Error::from).and_then(|cli| {
                if matches!(cli.command, Command::Batch { .. }) {
                    bail!("nested batch files are not supported");
                }
                run(&cli)
            });
            result.unwrap_or_else(|e| {
                let mut r = Report::new("error", json!({"line": line, "args": argv}));
                r.check("job ran", false, format!("line {line}: {e:#}"));
                r
            })
        })
        .collect();
    report.set("passed", children.iter().filter(|c| c.ok()).count());
    report.children = children;
    Ok(report)
}
