use ietkit::flow::{
    cocycle_constancy_check, flow_step, q_value, tower_diagnostics, FlowPoint, StepRoof,
    TowerOptions, WitnessWords,
};
use ietkit::golden;
use ietkit::iet::{Point, Precision};
use ietkit::numerics::{CertifiedReal, Comparison};

#[test]
fn q_values_of_the_golden_preimages() {
    let a = golden::matrix_a();
    assert_eq!(q_value(&a, &"251534".parse().unwrap()), 35);
    assert_eq!(q_value(&a, &"5153351".parse().unwrap()), 36);
}

#[test]
fn golden_towers_over_four_periods() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let (w1, w2) = golden::witness_words();
    let wit = WitnessWords { w1, w2, set: golden::s1() };
    let t0 = std::time::Instant::now();
    let diags = tower_diagnostics(&per, &wit, 4, &TowerOptions::default()).unwrap();
    for d in &diags {
        println!("depth {} a1-a2 {} ratio {:?}", d.depth, d.a_difference, d.displacement_ratio.as_ref().map(|r| r.to_f64()));
        for t in &d.towers {
            println!("  q {} h {} |I| {:.3e} mu {:.4} alpha {:.4} disp {:.3e} bnd {:.3e} bf {:?} {}", t.q, t.tower_height, t.interval_length.to_f64(), t.measure.to_f64(), d.alpha.to_f64(), t.displacement.to_f64(), t.boundary_measure.to_f64(), t.boundary_measure_bruteforce.as_ref().map(|x| x.to_f64()), t.birkhoff_method);
        }
        for c in &d.checks {
            if !c.passed { println!("  FAILED {}", c.name); }
        }
    }
    println!("elapsed {:?}", t0.elapsed());
    assert!(diags.iter().all(|d| d.passed()));
}

#[test]
fn cocycle_at_depth_zero_and_one_period() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let h = StepRoof::from_ints(&[1, 2, 3, 4, 5]).unwrap();
    let r = cocycle_constancy_check(&per, &"3".parse().unwrap(), &h, 0, 3).unwrap();
    assert!(r.passed);
    assert_eq!(r.predicted.exact_value().unwrap(), &num_rational::BigRational::from_integer(3.into()));
    let (w1, _) = golden::witness_words();
    let r = cocycle_constancy_check(&per, &w1, &h, 24, 3).unwrap();
    assert!(r.passed);
    assert!(cocycle_constancy_check(&per, &"251534".parse().unwrap(), &h, 24, 3).is_err());
}

#[test]
fn suspension_time_one() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let t = &per.iet;
    let f = StepRoof::unit(5);
    for k in 1..200i128 {
        let x = Point::between(t.beta(0), t.total(), k, 200);
        let p = FlowPoint::new(t, &f, x.clone(), CertifiedReal::zero()).unwrap();
        let q = flow_step(t, &f, &CertifiedReal::from_int(1), &p).unwrap();
        assert_eq!(t.lengths().compare_points(&q.x, &t.apply(&x).unwrap()), Comparison::Equal);
    }
}
