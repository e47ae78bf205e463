use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use ietkit::flow::{flow_step, tower_diagnostics, FlowPoint, StepRoof, TowerOptions, WitnessWords};
use ietkit::golden;
use ietkit::iet::Point;
use ietkit::numerics::{char_poly, compare, factor_int_poly, CertifiedReal, Comparison, IntMatrix};
use ietkit::perm::reduction_identity_check;
use ietkit::rauzy::{compose_path, find_closed_primitive_paths, nu};
use ietkit::subst::{
    find_witness_pair, fixed_point_prefix, substitution_from_induction, weak_mixing_certificate,
    WeakMixingCriterion, DEFAULT_WITNESS_BUDGET,
};
use ietkit::{Error, Result};

use crate::{Cli, Outcome};

#[derive(Serialize)]
struct Item {
    name: String,
    passed: bool,
    detail: String,
}

struct Checklist(Vec<Item>);

impl Checklist {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        eprintln!("[{}] {name}", if passed { "PASS" } else { "FAIL" });
        self.0.push(Item {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

fn tampered(a: &IntMatrix, spec: &str) -> Result<IntMatrix> {
    let parts: Vec<i64> = spec
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("--tamper expects i,j,delta, got {spec:?}")))?;
    let [i, j, d] = parts[..] else {
        return Err(Error::InvalidInput(format!("--tamper expects i,j,delta, got {spec:?}")));
    };
    let n = a.dim() as i64;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::InvalidInput(format!("--tamper index out of range: {spec}")));
    }
    let mut out = a.clone();
    let (i, j) = (i as usize - 1, j as usize - 1);
    out.set(i, j, a.get(i, j) + d);
    Ok(out)
}

pub fn verify_golden(cli: &Cli, tamper: Option<&str>, idoc: usize, periods: usize) -> Result<Outcome> {
    let mut c = Checklist(Vec::new());
    let precision = cli.precision();

    let (mut a, end) = compose_path(&golden::path());
    if let Some(t) = tamper {
        a = tampered(&a, t)?;
    }
    c.add("path matrix equals A", a == golden::matrix_a(), format!("{a:?}"));
    c.add("path returns to the symmetric permutation", end == golden::start(), end.to_string());
    let b = a.mul(&a);
    c.add("A^2 equals B", b == golden::matrix_b(), "");
    let nu_b = nu(&golden::matrix_b())?;
    c.add("nu(B) = 5", nu_b == BigRational::from_integer(BigInt::from(5)), nu_b.to_string());

    let found = find_closed_primitive_paths(&golden::start(), golden::PATH.len())?;
    c.add(
        "path search finds the loop",
        found.iter().any(|p| p.label_string() == golden::PATH),
        format!("{} closed primitive paths", found.len()),
    );

    let factors: Vec<String> = factor_int_poly(&char_poly(&a))?.iter().map(|f| f.to_string()).collect();
    c.add(
        "characteristic polynomial factors as (x - 1)(x^4 - 8x^3 + 15x^2 - 8x + 1)",
        factors == ["x - 1", "x^4 - 8x^3 + 15x^2 - 8x + 1"],
        factors.join(" * "),
    );

    let per = golden::golden_iet(precision)?;
    let theta = per.theta.refine(precision.working_bits.max(200));
    let closed = golden::theta_closed_form().refine(precision.working_bits.max(200));
    let tol = BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), 30));
    let close = theta.overlaps(&closed) && theta.width() < tol && closed.width() < tol;
    c.add("Perron root encloses the closed form", close, theta.to_decimal(40));

    let bvec = golden::DIFFERENCE.to_vec();
    c.add(
        "A and B fix (-1,1,-1,1,-1)",
        a.mul_vec(&bvec) == bvec && golden::matrix_b().mul_vec(&bvec) == bvec,
        "",
    );

    let wm = weak_mixing_certificate(&golden::matrix_a(), WeakMixingCriterion::ReportOnly)?;
    c.add(
        "quartic factor Galois data reported",
        wm.quartics.len() == 1,
        wm.quartics.first().map(|q| format!("{} of order {}", q.group, q.group_order)).unwrap_or_default(),
    );

    let sigma = substitution_from_induction(&per.iet, golden::PATH.len())?;
    c.add("induced substitution equals sigma", sigma == golden::sigma(), serde_json::to_string(&sigma).unwrap_or_default());
    c.add("substitution matrix equals A", sigma.matrix() == golden::matrix_a(), "");
    let u = fixed_point_prefix(&sigma, 1, 60)?;
    let printed = golden::U_PREFIX;
    c.add(
        "fixed point prefix matches the printed prefix",
        u.to_string().starts_with(printed),
        format!("{} printed symbols compared; computed {}", printed.len(), u),
    );
    let code0 = per.iet.code_orbit(&Point::zero(per.iet.dim()), 60)?;
    c.add("orbit coding of 0 equals the fixed point", code0 == u, "");

    let (w1, w2) = golden::witness_words();
    let r1 = per.iet.is_recurrence_word(&w1)?;
    let r2 = per.iet.is_recurrence_word(&w2)?;
    c.add("sigma(251534) and sigma(5153351) are recurrence words", r1 && r2, format!("lengths {} and {}", w1.len(), w2.len()));
    let diff: Vec<i64> = w1.population(5).iter().zip(w2.population(5)).map(|(x, y)| x - y).collect();
    c.add("population difference equals b(S_1)", diff == golden::s1().b_vector(5), format!("{diff:?}"));
    let pair = find_witness_pair(&golden::sigma(), &golden::start().cyclic_sets(), DEFAULT_WITNESS_BUDGET)?;
    let pair_ok = pair.is_consistent()
        && per.iet.is_recurrence_word(&pair.w1)?
        && per.iet.is_recurrence_word(&pair.w2)?;
    c.add("witness search within budget", pair_ok, format!("{} / {} for {}", pair.w1, pair.w2, pair.set));
    let verdict = per.iet.idoc_heuristic(idoc);
    c.add("IDOC horizon", verdict.passed(), serde_json::to_string(&verdict).unwrap_or_default());

    let odd: Vec<usize> = (5..=21).step_by(2).collect();
    let reached = odd.iter().map(|&m| reduction_identity_check(m)).collect::<Result<Vec<_>>>()?;
    c.add("a b^(m-3) takes the symmetric permutation to tau_m, odd m <= 21", reached.iter().all(|x| *x), "");

    let t = &per.iet;
    let f = StepRoof::unit(5);
    let mut flow_ok = true;
    for k in 1..=1000i128 {
        let x = Point::between(t.beta(0), t.total(), k, 1001);
        let p = FlowPoint::new(t, &f, x.clone(), CertifiedReal::zero())?;
        let q = flow_step(t, &f, &CertifiedReal::from_int(1), &p)?;
        flow_ok &= t.lengths().compare_points(&q.x, &t.apply(&x)?) == Comparison::Equal
            && compare(&q.r, &CertifiedReal::zero(), precision.max_bits) == Comparison::Equal;
    }
    c.add("unit-roof flow at time 1 equals the map", flow_ok, "1000 points");

    if periods > 0 {
        let witness = WitnessWords {
            w1,
            w2,
            set: golden::s1(),
        };
        for d in tower_diagnostics(&per, &witness, periods, &TowerOptions::default())? {
            let failed: Vec<&str> = d.checks.iter().filter(|x| !x.passed).map(|x| x.name.as_str()).collect();
            c.add(
                &format!("tower diagnostics at depth {}", d.depth),
                failed.is_empty(),
                if failed.is_empty() {
                    format!("{} checks", d.checks.len())
                } else {
                    format!("failed: {}", failed.join(", "))
                },
            );
        }
    }

    let passed = c.0.iter().all(|i| i.passed);
    Ok(Outcome {
        result: json!({ "checks": c.0 }),
        dot: None,
        passed,
    })
}
