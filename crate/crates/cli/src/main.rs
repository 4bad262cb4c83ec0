//! Command-line front end: parse germs and arcs, dispatch the computations,
//! emit exact JSON reports on stdout.
//!
//! Exit codes: 0 on success, 2 on input errors, 3 when a result is
//! undetermined at the requested precision.

mod json;

use std::cmp::Ordering;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use nashseq_core::algebra::parse::{
    parse_arc, parse_polynomial_list, VarTable,
};
use nashseq_core::algebra::{Arc, ExponentVector, FieldDesc};
use nashseq_core::arcspace::{
    arc_distance, attaining_direction, ball_order_profile, ball_sample_order, sample_ball_orders,
    ArcDistance,
};
use nashseq_core::error::Error;
use nashseq_core::motivic::{census, partial_sum, volume_closed_form, PointCounter};
use nashseq_core::nash::{
    arc_on_line, compare_sequences, generic_multiplicity_along_arc, nash_sequences,
    smooth_stabilization_bound, GermIdeal, SmoothBound,
};
use nashseq_core::staircase::Staircase;
use nashseq_core::standard_basis::standard_basis;

#[derive(Parser)]
#[command(
    name = "nashseq",
    about = "Nash sequences of germs along arcs, arc-space metrics, and motivic volumes",
    version
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nash sequences (multiplicities, Hilbert-Samuel data, diagrams) of a
    /// germ along a truncated arc.
    Seq(SeqArgs),
    /// Generic multiplicity of a hypersurface along an arc, with the witness
    /// order D.
    Generic(GenericArgs),
    /// Diagram utilities on explicit vertex sets.
    Staircase(StaircaseArgs),
    /// Standard basis and diagram of initial exponents of an ideal in K[t,X].
    Sb(SbArgs),
    /// Exact minimum of ord(f o theta) over a ball of arcs, with sampling.
    BallMin(BallMinArgs),
    /// Ultrametric distance between two arcs.
    Distance(DistanceArgs),
    /// Grothendieck-ring computations for the Brieskorn family.
    Motivic(MotivicArgs),
    /// Semicontinuity sampling along random rational lines of arcs.
    Semicont(SemicontArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// Germ generators, semicolon separated, in the X variables.
    #[arg(long)]
    germ: String,
    /// Arc as a tuple of polynomials in t, e.g. "(t^3, t^2)".
    #[arg(long)]
    arc: String,
    /// Truncation order; the arc is zero-extended or truncated to it.
    #[arg(long)]
    steps: usize,
    /// Composition precision for the stabilization bound.
    #[arg(long, default_value_t = 64)]
    precision: u32,
    /// Dimension of the germ (caller-asserted); defaults to n-1 for
    /// hypersurfaces.
    #[arg(long)]
    dim: Option<usize>,
    /// Comma-separated variable names overriding the x1..xn convention.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args)]
struct GenericArgs {
    #[arg(long)]
    germ: String,
    #[arg(long)]
    arc: String,
    #[arg(long, default_value_t = 64)]
    precision: u32,
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args)]
struct StaircaseArgs {
    #[command(subcommand)]
    op: StaircaseOp,
}

#[derive(Subcommand)]
enum StaircaseOp {
    /// Dickson reduction of a set of exponents to the vertex antichain.
    Minimalize {
        /// JSON array of exponent vectors, e.g. "[[1,0],[2,0],[1,1]]".
        #[arg(long)]
        points: String,
        /// Ambient dimension; only needed when the point list is empty.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The total order on diagrams.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The counting function H_N(k).
    Hilbert {
        #[arg(long)]
        points: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Args)]
struct SbArgs {
    /// Ideal generators in K[t, X], semicolon separated.
    #[arg(long)]
    ideal: String,
    /// Tail-reduce the basis up to this degree bound (distinguished form).
    #[arg(long)]
    distinguish_bound: Option<u64>,
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args)]
struct BallMinArgs {
    /// The germ polynomial in the X variables.
    #[arg(long)]
    f: String,
    #[arg(long)]
    arc: String,
    /// Ball truncation order.
    #[arg(long)]
    i: usize,
    /// Number of random arcs to sample from the ball.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Seed for the sampling; required whenever samples > 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct MotivicArgs {
    #[command(subcommand)]
    op: MotivicOp,
}

#[derive(Subcommand)]
enum MotivicOp {
    /// Closed-form motivic volume of x_1^k + .. + x_n^k + y^{2k}.
    Volume {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Level-i partial sum T_i = [P^i] L^{-ni}.
    Partial {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        level: u32,
    },
    /// Brute-force count of principal tuples over F_q.
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include elapsed time in the JSON (off by default so reports are
        /// byte-identical across runs).
        #[arg(long, default_value_t = false)]
        timing: bool,
    },
}

#[derive(Args)]
struct SemicontArgs {
    #[arg(long)]
    germ: String,
    /// Truncation order of the sampled arcs.
    #[arg(long)]
    steps: usize,
    /// Number of random rational lines.
    #[arg(long, default_value_t = 1)]
    lines: usize,
    /// Diagram-sequence samples per line.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Ambient dimension (number of X variables).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    vars: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match &cli.out {
                None => println!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(Error::UndeterminedAtPrecision(p)) => {
            let report = json!({ "undetermined_at_precision": p });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: &Command) -> Result<Value, Error> {
    match cmd {
        Command::Seq(a) => run_seq(a),
        Command::Generic(a) => run_generic(a),
        Command::Staircase(a) => run_staircase(a),
        Command::Sb(a) => run_sb(a),
        Command::BallMin(a) => run_ball_min(a),
        Command::Distance(a) => run_distance(a),
        Command::Motivic(a) => run_motivic(a),
        Command::Semicont(a) => run_semicont(a),
    }
}

fn field() -> FieldDesc {
    FieldDesc::Rationals
}

/// Variable table for germ polynomials over exactly n X-variables.
fn germ_table(n: usize, vars: &Option<String>) -> Result<VarTable, Error> {
    match vars {
        Some(list) => {
            let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            if names.len() != n {
                return Err(Error::BadArgument(format!(
                    "--vars lists {} names but the arc has {} components",
                    names.len(),
                    n
                )));
            }
            Ok(VarTable::from_names(names))
        }
        None => Ok(VarTable::from_names(
            (1..=n).map(|j| format!("x{j}")).collect(),
        )),
    }
}

fn parse_germ(src: &str, n: usize, vars: &Option<String>) -> Result<GermIdeal, Error> {
    let table = germ_table(n, vars)?;
    let gens = parse_polynomial_list(src, &table, field())?;
    GermIdeal::new(n, gens)
}

/// Zero-extend or truncate an exact polynomial arc to the requested order.
fn fit_arc(arc: &Arc, steps: usize) -> Result<Arc, Error> {
    if arc.order() >= steps {
        Ok(arc.truncate(steps))
    } else {
        arc.extend(vec![vec![field().zero(); arc.n()]; steps - arc.order()])
    }
}

fn run_seq(a: &SeqArgs) -> Result<Value, Error> {
    let arc = parse_arc(&a.arc, field())?;
    let n = arc.n();
    let germ = parse_germ(&a.germ, n, &a.vars)?;
    let arc = fit_arc(&arc, a.steps)?;
    let report = nash_sequences(&germ, &arc)?;
    let dim = a.dim.or_else(|| germ.is_hypersurface().then(|| n - 1));
    let (bound_value, bound_status) = match dim {
        None => (Value::Null, "not_computed"),
        Some(d) => match smooth_stabilization_bound(&germ, &arc, d, a.precision)? {
            SmoothBound::Known(b) => (json!(b), "known"),
            SmoothBound::UnknownAtPrecision => (Value::Null, "unknown_at_precision"),
        },
    };
    Ok(json::nash_report(&report, bound_value, bound_status))
}

fn run_generic(a: &GenericArgs) -> Result<Value, Error> {
    let arc = parse_arc(&a.arc, field())?;
    let germ = parse_germ(&a.germ, arc.n(), &a.vars)?;
    if !germ.is_hypersurface() {
        return Err(Error::BadArgument(
            "generic multiplicity needs a hypersurface germ".into(),
        ));
    }
    let g = generic_multiplicity_along_arc(&germ.generators()[0], &arc, a.precision)?;
    Ok(json!({ "m_generic": g.multiplicity, "D": g.bound_d }))
}

fn parse_points(src: &str) -> Result<Vec<ExponentVector>, Error> {
    let raw: Vec<Vec<u32>> = serde_json::from_str(src)
        .map_err(|e| Error::BadArgument(format!("bad vertex list: {e}")))?;
    Ok(raw.into_iter().map(ExponentVector).collect())
}

fn staircase_of(src: &str, dim: Option<usize>) -> Result<Staircase, Error> {
    let pts = parse_points(src)?;
    let dim = pts
        .first()
        .map(|p| p.len())
        .or(dim)
        .ok_or_else(|| Error::BadArgument("empty vertex list needs --dim".into()))?;
    Staircase::minimalize(dim, pts)
}

fn run_staircase(a: &StaircaseArgs) -> Result<Value, Error> {
    match &a.op {
        StaircaseOp::Minimalize { points, dim } => {
            let s = staircase_of(points, *dim)?;
            Ok(json!({ "vertices": json::staircase(&s) }))
        }
        StaircaseOp::Compare { a, b, dim } => {
            let sa = staircase_of(a, *dim)?;
            let sb = staircase_of(b, *dim)?;
            let verdict = match sa.compare(&sb)? {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            Ok(json!({ "order": verdict }))
        }
        StaircaseOp::Hilbert { points, k, dim } => {
            let s = staircase_of(points, *dim)?;
            Ok(json!({ "k": k, "value": s.hilbert(*k) }))
        }
    }
}

fn run_sb(a: &SbArgs) -> Result<Value, Error> {
    let table = match &a.vars {
        Some(list) => {
            let mut names = vec!["t".to_string()];
            names.extend(list.split(',').map(|s| s.trim().to_string()));
            VarTable::from_names(names)
        }
        None => VarTable::infer(&[a.ideal.as_str()], true)?,
    };
    let gens = parse_polynomial_list(&a.ideal, &table, field())?;
    let mut sb = standard_basis(&gens)?;
    if let Some(bound) = a.distinguish_bound {
        sb = sb.distinguish(bound);
    }
    Ok(json!({
        "generators": sb.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "diagram": json::staircase(sb.diagram()),
        "distinguished": sb.is_distinguished(),
        "reduction_bound": sb.reduction_bound(),
    }))
}

fn run_ball_min(a: &BallMinArgs) -> Result<Value, Error> {
    let arc = parse_arc(&a.arc, field())?;
    let arc = fit_arc(&arc, a.i.max(arc.order()))?;
    let table = germ_table(arc.n(), &a.vars)?;
    let f = parse_polynomial_list(&a.f, &table, field())?
        .pop()
        .ok_or_else(|| Error::BadArgument("missing polynomial".into()))?;
    let profile = ball_order_profile(&f, &arc, a.i)?;
    let min: u64 = profile.iter().sum();
    let mut out = json!({
        "min_order": min,
        "profile": profile,
    });
    if a.samples > 0 {
        let seed = a
            .seed
            .ok_or_else(|| Error::BadArgument("--seed is required with --samples".into()))?;
        let sampled = sample_ball_orders(&f, &arc, a.i, a.samples, seed)?;
        let generic_dir = attaining_direction(&f, &arc, a.i, seed)?;
        let generic = ball_sample_order(&f, &arc, a.i, &generic_dir)?;
        let obj = out.as_object_mut().unwrap();
        obj.insert(
            "samples".into(),
            json!(sampled
                .iter()
                .map(|s| match s {
                    Some(v) => json!(v),
                    None => Value::Null,
                })
                .collect::<Vec<_>>()),
        );
        obj.insert("generic_sample".into(), json!(generic));
        obj.insert("seed".into(), json!(seed));
    }
    Ok(out)
}

fn run_distance(a: &DistanceArgs) -> Result<Value, Error> {
    let x = parse_arc(&a.a, field())?;
    let y = parse_arc(&a.b, field())?;
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch(x.n(), y.n()));
    }
    // Parsed arcs are exact polynomials: zero-pad to a common order so the
    // comparison sees all written coefficients.
    let order = x.order().max(y.order());
    let x = pad_exact(&x, order)?;
    let y = pad_exact(&y, order)?;
    Ok(match arc_distance(&x, &y)? {
        ArcDistance::DistinctBasePoints => json!({ "ord": 0, "distance": 1 }),
        ArcDistance::Order { ord } => json!({ "ord": ord }),
        ArcDistance::InfiniteUpToPrecision { precision } => {
            json!({ "ord": "infinity", "up_to_precision": precision })
        }
    })
}

fn pad_exact(arc: &Arc, order: usize) -> Result<Arc, Error> {
    if arc.order() >= order {
        return Ok(arc.clone());
    }
    arc.extend(vec![vec![field().zero(); arc.n()]; order - arc.order()])
}

fn run_motivic(a: &MotivicArgs) -> Result<Value, Error> {
    match &a.op {
        MotivicOp::Volume { n, k } => {
            let v = volume_closed_form(*n, *k)?;
            Ok(json!({
                "n": n,
                "k": k,
                "terms": v.terms.iter().map(json::motivic_expr).collect::<Vec<_>>(),
                "total": json::motivic_expr(&v.total),
            }))
        }
        MotivicOp::Partial { n, k, level } => {
            let t = partial_sum(*n, *k, *level)?;
            Ok(json!({
                "n": n,
                "k": k,
                "level": level,
                "expr": json::motivic_expr(&t),
                "virtual_dimension": t.virtual_dimension(),
            }))
        }
        MotivicOp::Census {
            n,
            k,
            level,
            q,
            threads,
            timing,
        } => {
            let r = census(*n, *k, *level, *q, *threads)?;
            eprintln!(
                "census n={} k={} level={} q={}: {} of {} tuples in {} ms",
                r.n, r.k, r.level, r.q, r.count, r.total_tuples, r.elapsed_ms
            );
            // Cross-check against the symbolic partial sum.
            let mut pc = PointCounter::new();
            let t = partial_sum(*n, *k, *level)?;
            let expected = t.specialize(*q, &mut pc)?
                * BigRational::from_integer(BigInt::from(q.pow(n * level)));
            let mut out = json!({
                "n": r.n,
                "k": r.k,
                "level": r.level,
                "q": r.q,
                "count": r.count,
                "total_tuples": r.total_tuples,
                "formula_count": json::rational(&expected),
                "matches_formula": expected == BigRational::from_integer(BigInt::from(r.count)),
            });
            if *timing {
                out.as_object_mut()
                    .unwrap()
                    .insert("elapsed_ms".into(), json!(r.elapsed_ms as u64));
            }
            Ok(out)
        }
    }
}

fn run_semicont(a: &SemicontArgs) -> Result<Value, Error> {
    let germ = parse_germ(&a.germ, a.n, &a.vars)?;
    if a.samples < 2 {
        return Err(Error::BadArgument("need at least 2 samples per line".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut results = Vec::new();
    let mut violations = 0usize;
    for line in 0..a.lines {
        let random_arc = |rng: &mut ChaCha8Rng| {
            let coeffs = (0..a.steps)
                .map(|_| {
                    (0..a.n)
                        .map(|_| field().from_i64(rng.gen_range(-3..=3)))
                        .collect()
                })
                .collect();
            Arc::new(field(), a.n, coeffs).unwrap()
        };
        let base = random_arc(&mut rng);
        let dir = loop {
            let d = random_arc(&mut rng);
            if d.coeffs().iter().any(|v| v.iter().any(|c| !c.is_zero())) {
                break d;
            }
        };
        let special = nash_sequences(&germ, &base)?;
        let mut generic: Option<nashseq_core::nash::NashReport> = None;
        let mut constant = true;
        for _ in 0..a.samples {
            let s = field()
                .from_ratio(rng.gen_range(1..=1_000_000), rng.gen_range(1..=997))
                .unwrap();
            let r = nash_sequences(&germ, &arc_on_line(&base, &dir, &s)?)?;
            match &generic {
                None => generic = Some(r),
                Some(g) => {
                    if compare_sequences(g, &r)? != Ordering::Equal {
                        constant = false;
                    }
                }
            }
        }
        let cmp = compare_sequences(generic.as_ref().unwrap(), &special)?;
        let ok = constant && cmp != Ordering::Greater;
        if !ok {
            violations += 1;
        }
        results.push(json!({
            "line": line,
            "constant": constant,
            "generic_vs_special": match cmp {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            },
        }));
    }
    Ok(json!({
        "lines": a.lines,
        "samples": a.samples,
        "violations": violations,
        "results": results,
    }))
}

