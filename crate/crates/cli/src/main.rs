//! `lefschetz-kit`: single queries and sweeps over the core library.
//!
//! Exit codes: 0 success, 1 a theorem check failed, 2 invalid input,
//! 3 a resource guard refused the job.

mod output;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lefschetz_core::generators::{in_combinatorial_ideal, initial_generators, Case};
use lefschetz_core::hilbert::{aci_hilbert, complement_count, froberg_corollary_degree, power_ci_hilbert, CorollaryKind};
use lefschetz_core::monomial::enumerate_degree_piece;
use lefschetz_core::paths::{conjecture_check, path_counts, Boundary, PathSpec};
use lefschetz_core::quotient::{
    check_piece_size, froberg_check, initial_degree_piece, injectivity_threshold_check, minimal_initial_generators,
    wlp_sweep, IdealSpec,
};
use lefschetz_core::witness::{witness_record, WitnessParams};
use lefschetz_core::{Error, FieldTag};

use output::{render, Format};

#[derive(Parser)]
#[command(name = "lefschetz-kit", version, about = "Weak Lefschetz checks for ideals of powers of linear forms")]
struct Cli {
    #[command(subcommand)]
    query: Query,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Kind {
    Initial,
    Hilbert,
    Froberg,
    Wlp,
    Inject,
    Witness,
    Paths,
    Sweep,
}

#[derive(Subcommand)]
enum Query {
    /// Initial ideal in degrees up to --d, compared with the explicit generators (a = 2, 3)
    Initial(Opts),
    /// Hilbert function of the power ideal and of the pure powers
    Hilbert(Opts),
    /// Exact dimensions against the truncated Froberg series
    Froberg(Opts),
    /// Maximal rank of multiplication by a general linear form in every degree
    Wlp(Opts),
    /// Injectivity in degree --d over a range of n
    Inject(Opts),
    /// Explicit kernel element for squares with 2d-2 <= n < 3d-2
    Witness(Opts),
    /// Lattice path counts a(n, d) and T(n, d)
    Paths(Opts),
    /// Injectivity over an (n, d) grid, cells run in parallel
    Sweep(Opts),
}

#[derive(Args, Clone, Debug)]
struct Opts {
    #[arg(long)]
    n: Option<usize>,
    /// Power of the generators
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    /// Inclusive range `A..B`
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    /// Inclusive range `A..B`
    #[arg(long, value_parser = parse_range)]
    d_range: Option<(usize, usize)>,
    /// `rational` or `prime:P`
    #[arg(long, default_value_t = FieldTag::default())]
    field: FieldTag,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Path boundary convention: `strict` or `touch`
    #[arg(long, default_value = "strict")]
    boundary: Boundary,
    /// Recompute prime-field verdicts over the rationals
    #[arg(long)]
    verify_rational: bool,
    /// Report timing_ms as 0, for byte-identical output
    #[arg(long)]
    no_timing: bool,
    /// paths: also compute the quotient dimension the path count should match
    #[arg(long)]
    conjecture: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..=").or_else(|| s.split_once("..")).ok_or("expected A..B")?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Rows of the report and whether any of them contradicts a theorem.
struct Outcome {
    rows: Vec<Value>,
    finding: bool,
    field: String,
}

type Run = Result<Outcome, Error>;

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidInput(format!("--{flag} is required")))
}

impl Opts {
    fn ns(&self) -> Result<Vec<usize>, Error> {
        match (self.n, self.n_range) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give --n or --n-range, not both".into())),
            (Some(n), None) => Ok(vec![n]),
            (None, Some((lo, hi))) => Ok((lo..=hi).collect()),
            (None, None) => Err(Error::InvalidInput("--n or --n-range is required".into())),
        }
    }

    fn ds(&self) -> Result<Vec<u32>, Error> {
        match (self.d, self.d_range) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give --d or --d-range, not both".into())),
            (Some(d), None) => Ok(vec![d]),
            (None, Some((lo, hi))) => Ok((lo as u32..=hi as u32).collect()),
            (None, None) => Err(Error::InvalidInput("--d or --d-range is required".into())),
        }
    }

    fn params(&self) -> Value {
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            if !v.is_null() {
                m.insert(k.into(), v);
            }
        };
        put("n", json!(self.n));
        put("a", json!(self.a));
        put("d", json!(self.d));
        put("n_range", self.n_range.map_or(Value::Null, |(a, b)| json!([a, b])));
        put("d_range", self.d_range.map_or(Value::Null, |(a, b)| json!([a, b])));
        put("boundary", json!(self.boundary.to_string()));
        put("verify_rational", json!(self.verify_rational));
        put("conjecture", json!(self.conjecture));
        Value::Object(m)
    }
}

fn to_row<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report rows serialize")
}

fn initial(o: &Opts) -> Run {
    let (n, a, top) = (need(o.n, "n")?, need(o.a, "a")?, need(o.d, "d")?);
    if n == 0 || a < 2 {
        return Err(Error::InvalidInput("need n >= 1 and a >= 2".into()));
    }
    for d in 1..=top {
        check_piece_size(n, a, d)?;
    }
    let spec = IdealSpec::aci(n, a)?;
    let gens = match a {
        2 | 3 => Some(initial_generators(Case::for_power(a), n, top)?),
        _ => None,
    };
    let minimal = minimal_initial_generators(&spec, top, o.field);
    let mut rows = Vec::new();
    let mut finding = false;
    for d in 1..=top {
        let oracle: BTreeSet<_> = initial_degree_piece(&spec, d, o.field).into_iter().collect();
        let agree = match &gens {
            Some(g) => {
                let mut same = true;
                for m in enumerate_degree_piece(n, d, None) {
                    same &= in_combinatorial_ideal(&m, g)? == oracle.contains(&m);
                }
                Some(same)
            }
            None => None,
        };
        finding |= agree == Some(false);
        let new: Vec<String> = minimal.iter().filter(|m| m.degree() == d).map(ToString::to_string).collect();
        rows.push(json!({
            "n": n, "a": a, "d": d,
            "initial_dim": oracle.len(),
            "standard_dim": enumerate_degree_piece(n, d, None).len() - oracle.len(),
            "new_generators": new,
            "matches_explicit": agree,
        }));
    }
    Ok(Outcome { rows, finding, field: o.field.to_string() })
}

fn hilbert(o: &Opts) -> Run {
    let (n, a) = (need(o.n, "n")?, need(o.a, "a")?);
    if n == 0 || a < 1 {
        return Err(Error::InvalidInput("need n >= 1 and a >= 1".into()));
    }
    let socle = n * (a as usize - 1);
    let top = o.d.map_or(socle, |d| d as usize);
    let mut rows = Vec::new();
    let mut finding = false;
    for d in 0..=top {
        let aci = aci_hilbert(n, a, d);
        let complement = match a {
            2 | 3 if n <= 12 => Some(complement_count(Case::for_power(a), n, d as u32)?),
            _ => None,
        };
        let agree = complement.map(|c| aci == c.into());
        finding |= agree == Some(false);
        rows.push(json!({
            "n": n, "a": a, "d": d,
            "aci_dim": aci.to_string(),
            "power_ci_dim": power_ci_hilbert(n, a, d).to_string(),
            "complement_count": complement,
            "agree": agree,
        }));
    }
    Ok(Outcome { rows, finding, field: "rational".into() })
}

fn froberg(o: &Opts) -> Run {
    let (n, a) = (need(o.n, "n")?, need(o.a, "a")?);
    if n == 0 || a < 2 {
        return Err(Error::InvalidInput("need n >= 1 and a >= 2".into()));
    }
    let kind = match a {
        2 => CorollaryKind::Squares,
        3 => CorollaryKind::Cubes,
        _ => CorollaryKind::GeneralA,
    };
    let guaranteed = froberg_corollary_degree(n, a, kind)?;
    let top = o.d.unwrap_or(guaranteed as u32 + 1);
    for d in 0..=top {
        check_piece_size(n, a, d)?;
    }
    let mut per_seed = Vec::new();
    for &s in &o.seeds {
        per_seed.push(froberg_check(n, a, top, s, o.field)?);
    }
    let mut rows = Vec::new();
    let mut finding = false;
    for d in 0..=top as usize {
        let predicted = per_seed[0][d].predicted;
        let exact = per_seed.iter().map(|r| r[d].exact_dim).min().expect("at least one seed");
        let within = d <= guaranteed;
        finding |= within && exact as u64 != predicted;
        rows.push(json!({
            "n": n, "a": a, "d": d,
            "predicted": predicted,
            "exact_dim": exact,
            "guaranteed": within,
            "agree": exact as u64 == predicted,
        }));
    }
    Ok(Outcome { rows, finding, field: o.field.to_string() })
}

fn wlp(o: &Opts) -> Run {
    let (n, a) = (need(o.n, "n")?, need(o.a, "a")?);
    for d in 0..=(n as u32 * a.saturating_sub(1)) {
        check_piece_size(n.saturating_sub(1).max(1), a, d)?;
    }
    let report = wlp_sweep(n, a, &o.seeds, o.field, o.verify_rational)?;
    let rows = report
        .degrees
        .iter()
        .map(|v| {
            let mut row = Map::new();
            row.insert("n".into(), json!(n));
            row.insert("a".into(), json!(a));
            if let Value::Object(m) = to_row(v) {
                row.extend(m);
            }
            row.insert("overall_wlp".into(), json!(report.overall_wlp));
            Value::Object(row)
        })
        .collect();
    Ok(Outcome { rows, finding: false, field: o.field.to_string() })
}

fn threshold_rows(a: u32, cells: &[(u32, usize)], o: &Opts) -> Run {
    let run = |&(d, n): &(u32, usize)| -> Result<Value, Error> {
        let rows = injectivity_threshold_check(a, d, &[n], &o.seeds, o.field, o.verify_rational)?;
        let row = &rows[0];
        let mut v = to_row(row);
        v["contradicts_theorem"] = json!(row.contradicts_theorem());
        Ok(v)
    };
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(cells.len().max(1));
    let results: Vec<Result<Value, Error>> = if workers <= 1 {
        cells.iter().map(run).collect()
    } else {
        // static striping keeps the output order independent of scheduling
        let mut slots: Vec<Option<Result<Value, Error>>> = (0..cells.len()).map(|_| None).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let run = &run;
                    s.spawn(move || {
                        cells.iter().enumerate().skip(w).step_by(workers).map(|(i, c)| (i, run(c))).collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("every cell ran")).collect()
    };
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let finding = rows.iter().any(|r| r["contradicts_theorem"] == json!(true));
    Ok(Outcome { rows, finding, field: o.field.to_string() })
}

fn check_cells(a: u32, cells: &[(u32, usize)]) -> Result<(), Error> {
    for &(d, n) in cells {
        check_piece_size(n, a, d)?;
    }
    Ok(())
}

fn inject(o: &Opts) -> Run {
    let (a, d) = (need(o.a, "a")?, need(o.d, "d")?);
    let cells: Vec<(u32, usize)> = o.ns()?.into_iter().map(|n| (d, n)).collect();
    check_cells(a, &cells)?;
    threshold_rows(a, &cells, o)
}

fn sweep(o: &Opts) -> Run {
    let a = need(o.a, "a")?;
    let ns = o.ns()?;
    let cells: Vec<(u32, usize)> = o.ds()?.into_iter().flat_map(|d| ns.iter().map(move |&n| (d, n))).collect();
    check_cells(a, &cells)?;
    threshold_rows(a, &cells, o)
}

fn witness(o: &Opts) -> Run {
    let (n, d) = (need(o.n, "n")?, need(o.d, "d")?);
    let mut rows = Vec::new();
    let mut finding = false;
    for &s in &o.seeds {
        let rec = witness_record(&WitnessParams::random(n, d, s)?, Some(s))?;
        finding |= !(rec.congruence_ok && rec.nonmembership_ok);
        rows.push(to_row(&rec));
    }
    Ok(Outcome { rows, finding, field: "rational".into() })
}

fn paths(o: &Opts) -> Run {
    let mut rows = Vec::new();
    for n in o.ns()? {
        for d in o.ds()? {
            let spec = PathSpec::new(n, d as usize, o.boundary)?;
            let c = path_counts(&spec);
            let calibrated = c.closed_form_value.as_ref().map(|v| *v == c.a_count.clone().into());
            rows.push(json!({
                "n": n, "d": d,
                "boundary": o.boundary.to_string(),
                "a": c.a_count.to_string(),
                "t": c.t_count.to_string(),
                "closed_form": c.closed_form_value.map(|v| v.to_string()),
                "matches_closed_form": calibrated,
            }));
        }
    }
    // only the default convention is expected to reproduce the closed form
    let finding = o.boundary == Boundary::CrossMeansStrictlyBeyond
        && rows.iter().any(|r| r["matches_closed_form"] == json!(false));
    Ok(Outcome { rows, finding, field: "rational".into() })
}

fn paths_with_dims(o: &Opts) -> Run {
    let mut out = paths(o)?;
    if o.conjecture {
        for row in &mut out.rows {
            let n = row["n"].as_u64().unwrap_or(0) as usize;
            let d = row["d"].as_u64().unwrap_or(0) as usize;
            let c = conjecture_check(n, d, &o.seeds, o.field)?;
            row["exact_dim"] = json!(c.exact_dim);
            row["bound_holds"] = json!(c.bound_holds);
            row["agrees"] = json!(c.agrees);
            out.finding |= !c.bound_holds;
        }
        out.field = o.field.to_string();
    }
    Ok(out)
}

fn dispatch(kind: Kind, o: &Opts) -> Run {
    if o.seeds.is_empty() {
        return Err(Error::InvalidInput("--seeds must name at least one seed".into()));
    }
    match kind {
        Kind::Initial => initial(o),
        Kind::Hilbert => hilbert(o),
        Kind::Froberg => froberg(o),
        Kind::Wlp => wlp(o),
        Kind::Inject => inject(o),
        Kind::Witness => witness(o),
        Kind::Paths => paths_with_dims(o),
        Kind::Sweep => sweep(o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, opts) = match cli.query {
        Query::Initial(o) => (Kind::Initial, o),
        Query::Hilbert(o) => (Kind::Hilbert, o),
        Query::Froberg(o) => (Kind::Froberg, o),
        Query::Wlp(o) => (Kind::Wlp, o),
        Query::Inject(o) => (Kind::Inject, o),
        Query::Witness(o) => (Kind::Witness, o),
        Query::Paths(o) => (Kind::Paths, o),
        Query::Sweep(o) => (Kind::Sweep, o),
    };
    let start = Instant::now();
    let outcome = match dispatch(kind, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("lefschetz-kit: {e}");
            return ExitCode::from(match e {
                Error::InvalidInput(_) => 2,
                Error::ResourceGuard(_) => 3,
                Error::InternalFault(_) => 1,
            });
        }
    };
    let timing = if opts.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    let query = kind.to_possible_value().expect("named").get_name().to_string();
    let report = json!({
        "schema": "lefschetz-kit/1",
        "query": query,
        "params": opts.params(),
        "result": outcome.rows,
        "field": outcome.field,
        "seeds": opts.seeds,
        "timing_ms": timing,
    });
    let text = match render(&report, opts.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("lefschetz-kit: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &opts.out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("lefschetz-kit: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if outcome.finding {
        eprintln!("lefschetz-kit: a theorem check failed, see the report");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
