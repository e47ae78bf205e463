use ietkit::golden;
use ietkit::iet::{IdocVerdict, Precision};
use ietkit::numerics::{char_poly, compare, factor_int_poly, CertifiedReal, Comparison};
use ietkit::perm::{Label, Permutation};
use ietkit::rauzy::{compose_path, find_closed_primitive_paths, induce, nu};
use ietkit::subst::{
    find_witness_pair, fixed_point_prefix, language, substitution_from_induction,
    substitution_of_path, weak_mixing_certificate, WeakMixingCriterion,
};
use ietkit::Word;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn path_product_is_the_printed_matrix() {
    let (a, end) = compose_path(&golden::path());
    assert_eq!(a, golden::matrix_a());
    assert_eq!(end, golden::start());
    let (b, _) = compose_path(&golden::path().repeat(2));
    assert_eq!(b, golden::matrix_b());
    assert_eq!(a.mul(&a), b);
    assert_eq!(nu(&b).unwrap(), num_rational::BigRational::from_integer(5.into()));
}

#[test]
fn path_search_finds_the_golden_loop() {
    let found = find_closed_primitive_paths(&golden::start(), 12).unwrap();
    assert!(found.iter().any(|p| p.label_string() == golden::PATH));
    let mut sorted = found.clone();
    sorted.sort();
    assert_eq!(sorted, found);
}

#[test]
fn spectrum() {
    let p = char_poly(&golden::matrix_a());
    let f: Vec<String> = factor_int_poly(&p).unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(f, vec!["x - 1", "x^4 - 8x^3 + 15x^2 - 8x + 1"]);
    let per = golden::golden_iet(Precision::default()).unwrap();
    let closed = golden::theta_closed_form();
    let t = per.theta.refine(256);
    assert!(t.overlaps(&closed.refine(256)));
    assert_eq!(compare(&t, &CertifiedReal::from_ratio(555, 100), 256), Comparison::Greater);
    let rep = weak_mixing_certificate(&golden::matrix_a(), WeakMixingCriterion::ReportOnly).unwrap();
    assert_eq!(rep.quartics.len(), 1);
    assert_eq!(rep.quartics[0].group, "D4");
}

#[test]
fn induction_follows_the_path_twice() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let recs = induce(per.iet.pair(), 24).unwrap();
    let labels: String = recs.iter().map(|r| r.label.as_char()).collect();
    assert_eq!(labels, golden::PATH.repeat(2));
    assert_eq!(recs.last().unwrap().next.perm, golden::start());
    let _ = Label::A;
}

#[test]
fn substitution_matches() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let s = substitution_from_induction(&per.iet, 12).unwrap();
    assert_eq!(s, golden::sigma());
    assert_eq!(substitution_of_path(&golden::path()), golden::sigma());
    assert_eq!(s.matrix(), golden::matrix_a());
    let u = fixed_point_prefix(&s, 1, 60).unwrap();
    assert_eq!(&u.to_string()[..59], golden::U_PREFIX);
    let code = per
        .iet
        .code_orbit(&ietkit::iet::Point::between(per.iet.beta(0), per.iet.beta(1), 1, 2), 16)
        .unwrap();
    // the orbit of an interior point of Delta_1 need not follow u; the left end does
    let code0 = per.iet.code_orbit(&ietkit::iet::Point::zero(per.iet.dim()), 60).unwrap();
    assert_eq!(code0, u);
    assert_eq!(code.len(), 16);
    let l2 = language(&s, 2);
    assert!(l2.contains(&w("15")) && !l2.contains(&w("11")));
}

#[test]
fn witness_words_are_recurrence_words() {
    let per = golden::golden_iet(Precision::default()).unwrap();
    let (w1, w2) = golden::witness_words();
    assert_eq!((w1.len(), w2.len()), (35, 36));
    assert!(per.iet.is_recurrence_word(&w1).unwrap());
    assert!(per.iet.is_recurrence_word(&w2).unwrap());
    let d: Vec<i64> = w1.population(5).iter().zip(w2.population(5)).map(|(a, b)| a - b).collect();
    assert_eq!(d, golden::s1().b_vector(5));
    let sets = Permutation::tau_sym(5).unwrap().cyclic_sets();
    let pair = find_witness_pair(&golden::sigma(), &sets, 64).unwrap();
    assert!(pair.is_consistent());
    assert!(per.iet.is_recurrence_word(&pair.w1).unwrap());
    assert!(per.iet.is_recurrence_word(&pair.w2).unwrap());
    println!("{} {} {}", pair.w1, pair.w2, pair.set);
    assert!(per.iet.idoc_heuristic(100).passed());
    assert!(!matches!(per.iet.idoc_heuristic(100), IdocVerdict::Unknown { .. }));
}
