use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use ietkit::flow::{tower_diagnostics, TowerOptions, WitnessWords};
use ietkit::golden;
use ietkit::iet::{parse_rational, IetMap, IetSpec, LengthVector};
use ietkit::perm::Permutation;
use ietkit::rauzy::{find_closed_primitive_paths, induce, rauzy_class, RauzyPath};
use ietkit::reduce::{full_reduction, ReductionOptions};
use ietkit::subst::{find_witness_pair, periodic_iet_from_path, PeriodicIet};
use ietkit::{Error, Result};

use crate::{verify, Cli, Command, Outcome};

/// Reads `5,4,3,2,1`, `(5,4,3,2,1)`, `54321`, or a JSON file holding an array.
pub fn read_perm(s: &str) -> Result<Permutation> {
    let p = Path::new(s);
    if p.is_file() {
        let text = fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{s}: {e}")))?;
        let image: Vec<usize> = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidPermutation(format!("{s}: {e}")))?;
        return Permutation::new(image);
    }
    Permutation::parse(s)
}

fn read_iet(path: &Path, cli: &Cli) -> Result<IetMap> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let spec: IetSpec = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    spec.build(cli.precision())
}

fn periodic(perm: &str, path: &str, cli: &Cli) -> Result<PeriodicIet> {
    let path = RauzyPath::parse(read_perm(perm)?, path)?;
    periodic_iet_from_path(&path, cli.precision())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Graph { perm } => graph(&read_perm(perm)?),
        Command::Class { perm } => class(&read_perm(perm)?),
        Command::Induce { iet, perm, lengths, steps } => {
            let t = match (iet, perm, lengths) {
                (Some(p), _, _) => read_iet(p, cli)?,
                (None, Some(p), Some(l)) => {
                    let q = l.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                    IetMap::from_parts(LengthVector::from_rationals(&q, cli.precision()), read_perm(p)?)?
                }
                _ => return Err(Error::InvalidInput("give --iet FILE or --perm with --lengths".into())),
            };
            induction(&t, *steps)
        }
        Command::FindPeriodic { perm, max_len, limit } => find_periodic(&read_perm(perm)?, *max_len, *limit),
        Command::VerifyGolden { tamper, idoc, periods } => verify::verify_golden(cli, tamper.as_deref(), *idoc, *periods),
        Command::SearchWitness { perm, path, budget, idoc } => search_witness(&periodic(perm, path, cli)?, *budget, *idoc),
        Command::Reduce { m, draws, idoc, cap, budget, loop_max_len } => {
            let opts = ReductionOptions {
                seed: cli.seed,
                draws: *draws,
                idoc_horizon: *idoc,
                cap: *cap,
                witness_budget: *budget,
                loop_max_len: *loop_max_len,
                precision: cli.precision(),
                ..Default::default()
            };
            let cert = full_reduction(*m, &opts)?;
            let passed = cert.is_valid();
            Ok(Outcome {
                result: json!({ "m": m, "options": opts, "certificate": cert.to_json(), "reverified": passed }),
                dot: None,
                passed,
            })
        }
        Command::FlowDiag { perm, path, periods, budget } => {
            let per = match (perm, path) {
                (Some(p), Some(l)) => periodic(p, l, cli)?,
                _ => golden::golden_iet(cli.precision())?,
            };
            flow_diag(&per, *periods, *budget)
        }
    }
}

fn graph(pi: &Permutation) -> Result<Outcome> {
    let g = rauzy_class(pi)?;
    eprintln!("{} vertices", g.len());
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(u, c, v)| json!({ "from": u, "label": c.as_char().to_string(), "to": v }))
        .collect();
    Ok(Outcome {
        result: json!({
            "start": pi.image(),
            "vertices": g.vertices().iter().map(|p| p.image()).collect::<Vec<_>>(),
            "edges": edges,
        }),
        dot: Some(g.to_dot()),
        passed: true,
    })
}

fn class(pi: &Permutation) -> Result<Outcome> {
    let g = rauzy_class(pi)?;
    let m = pi.m();
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|p| {
            let sets: Vec<Value> = p
                .cyclic_sets()
                .iter()
                .map(|s| json!({ "S": s.members(), "b": s.b_vector(m) }))
                .collect();
            json!({ "permutation": p.image(), "cyclic_sets": sets, "tilde_class": p.in_tilde_class() })
        })
        .collect();
    Ok(Outcome {
        result: json!({ "start": pi.image(), "size": g.len(), "edges": g.edges().len(), "vertices": vertices }),
        dot: Some(g.to_dot()),
        passed: true,
    })
}

fn induction(t: &IetMap, steps: usize) -> Result<Outcome> {
    let recs = induce(t.pair(), steps)?;
    let rows: Vec<Value> = recs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "step": i + 1,
                "label": r.label.as_char().to_string(),
                "permutation": r.next.perm.image(),
                "lengths": r.next.lengths.values().iter().map(|v| v.to_decimal(20)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let labels: String = recs.iter().map(|r| r.label.as_char()).collect();
    Ok(Outcome {
        result: json!({ "labels": labels, "steps": rows }),
        dot: None,
        passed: true,
    })
}

fn find_periodic(pi: &Permutation, max_len: usize, limit: usize) -> Result<Outcome> {
    let found = find_closed_primitive_paths(pi, max_len)?;
    let total = found.len();
    let paths: Vec<String> = found.iter().take(limit).map(|p| p.label_string()).collect();
    Ok(Outcome {
        result: json!({ "start": pi.image(), "max_len": max_len, "count": total, "paths": paths }),
        dot: None,
        passed: true,
    })
}

fn search_witness(per: &PeriodicIet, budget: usize, idoc: usize) -> Result<Outcome> {
    let sigma = per.substitution();
    let sets = per.path.start.cyclic_sets();
    let pair = find_witness_pair(&sigma, &sets, budget)?;
    let t = &per.iet;
    let r1 = t.is_recurrence_word(&pair.w1)?;
    let r2 = t.is_recurrence_word(&pair.w2)?;
    let idoc_verdict = t.idoc_heuristic(idoc);
    let passed = r1 && r2 && pair.is_consistent() && idoc_verdict.passed();
    Ok(Outcome {
        result: json!({
            "path": per.path,
            "substitution": sigma,
            "witness": pair,
            "recurrence": [r1, r2],
            "idoc": idoc_verdict,
        }),
        dot: None,
        passed,
    })
}

fn flow_diag(per: &PeriodicIet, periods: usize, budget: usize) -> Result<Outcome> {
    let sets = per.path.start.cyclic_sets();
    let pair = find_witness_pair(&per.substitution(), &sets, budget)?;
    let (w1, w2, set) = if per.path.label_string() == golden::PATH && per.path.start == golden::start() {
        let (a, b) = golden::witness_words();
        (a, b, golden::s1())
    } else {
        (pair.w1, pair.w2, pair.set)
    };
    let witness = WitnessWords { w1, w2, set };
    let diags = tower_diagnostics(per, &witness, periods, &TowerOptions::default())?;
    let series: Vec<Value> = diags
        .iter()
        .map(|d| {
            json!({
                "depth": d.depth,
                "alpha_hat": d.towers.iter().map(|t| t.measure.to_f64()).collect::<Vec<_>>(),
                "alpha_bound": d.alpha.to_f64(),
                "sup_displacement": d.towers.iter().map(|t| t.displacement.to_f64()).collect::<Vec<_>>(),
                "boundary_measure": d.towers.iter().map(|t| t.boundary_measure.to_f64()).collect::<Vec<_>>(),
                "a": d.towers.iter().map(|t| t.a.to_decimal(12)).collect::<Vec<_>>(),
                "a_difference": d.a_difference.to_decimal(12),
                "displacement_ratio": d.displacement_ratio.as_ref().map(|r| r.to_decimal(12)),
                "checks": d.checks,
            })
        })
        .collect();
    let passed = diags.iter().all(|d| d.passed());
    Ok(Outcome {
        result: json!({
            "path": per.path,
            "witness": witness,
            "positive_power": per.positive_power,
            "series": series,
        }),
        dot: None,
        passed,
    })
}
