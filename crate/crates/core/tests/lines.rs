use std::collections::BTreeSet;

use monadkit::dual::build_mtilde;
use monadkit::lines::{
    enumerate_lines, line_count, m_wedge_line, negative_conic, positive_locus, LineClassifier, LocusKind, PlueckerLine,
};
use monadkit::monad::golden_monads;
use monadkit::p1_cohomology::splitting_type;
use monadkit::sample::{random_form, random_invertible, random_symmetric_monad, rng_for};
use monadkit::{Field, Monad};

fn key_set(lines: &[PlueckerLine]) -> BTreeSet<String> {
    lines.iter().map(|l| format!("{:?}", l.key())).collect()
}

fn sweep(name: &str, m: &Monad, q: u32) {
    let field = Field::Prime(q);
    assert!(m.validate().in_x0, "{name} over F_{q}");
    let classifier = LineClassifier::new(m).unwrap();
    let (mut minus2, mut plus2) = (Vec::new(), Vec::new());
    let mut total = 0;
    for line in enumerate_lines(q).unwrap() {
        total += 1;
        let oracle = splitting_type(m, &line).unwrap_or_else(|e| panic!("{name} {}: {e}", line.to_string_pair()));
        let rank = m_wedge_line(m.m(), &line).unwrap().rank();
        assert_eq!(oracle.h1_at(-1), 2 - rank, "{name} {}", line.to_string_pair());
        let class = classifier.classify(&line).unwrap();
        assert_eq!(class.splitting, oracle.splitting, "{name} {}", line.to_string_pair());
        if oracle.splitting.contains(&-2) {
            minus2.push(line.clone());
        }
        if oracle.splitting.contains(&2) {
            plus2.push(line);
        }
    }
    assert_eq!(total, line_count(q as u64));
    let conic = negative_conic(m.n()).unwrap().points(field).unwrap();
    assert_eq!(key_set(&minus2), key_set(&conic), "{name}: negative conic");
    let pos = positive_locus(m).unwrap();
    assert_eq!(key_set(&plus2), key_set(&pos.points(field).unwrap()), "{name}: positive locus");
}

#[test]
fn full_enumeration_over_f3_agrees_with_the_oracle() {
    for (name, m) in golden_monads(Field::Prime(3)).into_iter().take(3) {
        sweep(name, &m, 3);
    }
}

#[test]
fn oracle_and_classifier_agree_on_random_rational_lines() {
    let q = Field::Rationals;
    for (name, m) in golden_monads(q) {
        let c = LineClassifier::new(&m).unwrap();
        let mut rng = rng_for(31, 0);
        let conic = negative_conic(m.n()).unwrap();
        let mut lines: Vec<PlueckerLine> =
            (0..3).map(|s| conic.line(&q.from_i64(s), &q.from_i64(1)).unwrap()).collect();
        lines.extend((0..10).filter_map(|_| PlueckerLine::new(random_form(&mut rng, q, 5, 1, 3), random_form(&mut rng, q, 5, 1, 3)).ok()));
        for s in ["e0;e1", "e0;e2", "e1;e3", "e2;e4", "e0+e1;e2-e3"] {
            lines.push(PlueckerLine::parse(s, q).unwrap());
        }
        for l in &lines {
            let oracle = splitting_type(&m, l).unwrap();
            assert_eq!(c.classify(l).unwrap().splitting, oracle.splitting, "{name} {}", l.to_string_pair());
            assert_eq!(oracle.splitting.iter().sum::<i64>(), 0);
        }
    }
}

#[test]
fn results_do_not_depend_on_the_witness_pair() {
    let f = Field::Prime(5);
    let m = golden_monads(f).remove(0).1;
    let c = LineClassifier::new(&m).unwrap();
    let mut rng = rng_for(8, 0);
    for line in enumerate_lines(5).unwrap().step_by(97) {
        let g = random_invertible(&mut rng, f, 2, 5);
        let mixed = line.remix(&g).unwrap();
        assert_eq!(mixed, line);
        assert_eq!(c.classify(&mixed).unwrap(), c.classify(&line).unwrap());
        assert_eq!(splitting_type(&m, &mixed).unwrap().splitting, splitting_type(&m, &line).unwrap().splitting);
    }
}

#[test]
fn conic_points_are_decomposable_and_jump() {
    let f = Field::Prime(7);
    for (name, m) in golden_monads(f) {
        let c = LineClassifier::new(&m).unwrap();
        for l in negative_conic(m.n()).unwrap().points(f).unwrap() {
            assert!(l.omega().wedge(l.omega()).unwrap().is_zero());
            let class = c.classify(&l).unwrap();
            assert!(class.negative_jump && class.splitting.contains(&-2), "{name}");
        }
    }
}

#[test]
fn surface_parametrization_never_vanishes_over_f5() {
    let f = Field::Prime(5);
    let mut surfaces = 0;
    for (name, m) in golden_monads(f) {
        let locus = positive_locus(&m).unwrap();
        assert_eq!(locus.kind() == LocusKind::Surface, build_mtilde(m.m()).unwrap().rank() == 7, "{name}");
        if locus.kind() == LocusKind::Surface {
            surfaces += 1;
            assert_eq!(locus.parameter_count(), 3);
            assert!(locus.nowhere_zero_over(f).unwrap(), "{name}");
        }
    }
    assert!(surfaces > 0);
}

/// Symmetric members `m₁₂ = m₂₁` of the `N₄` family.
fn symmetric_monads(field: Field, wanted: usize) -> Vec<Monad> {
    let mut rng = rng_for(12, 0);
    let mut out = Vec::new();
    while out.len() < wanted {
        let monad = random_symmetric_monad(&mut rng, field, 50, 50).expect("symmetric points exist");
        if build_mtilde(monad.m()).unwrap().rank() == 8 {
            out.push(monad);
        }
    }
    out
}

#[test]
fn self_dual_positive_locus_is_the_negative_conic() {
    let f = Field::Prime(7);
    let monads = symmetric_monads(f, 3);
    assert!(!monads.is_empty());
    for m in monads {
        assert_eq!(m.m(), &m.m().transpose());
        let pos = positive_locus(&m).unwrap();
        assert_eq!(pos.kind(), LocusKind::Conic);
        let neg = negative_conic(m.n()).unwrap();
        assert_eq!(key_set(&pos.points(f).unwrap()), key_set(&neg.points(f).unwrap()));
    }
}
