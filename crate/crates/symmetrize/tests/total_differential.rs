use std::time::{Duration, Instant};

use bodies::Variant;
use setcore::SetMap;
use symmetrize::{
    check_total_differential, scan_signs, total_differential_residues, verify_total_differential, OperatorOptions,
    SectionWeighting, Signs,
};

fn map(target: usize, images: &[usize]) -> SetMap {
    SetMap::from_images(target, images.to_vec()).unwrap()
}

#[test]
fn bijections_are_vacuous() {
    for n in 1..=3 {
        let r = verify_total_differential(&map(n, &(0..n).collect::<Vec<_>>()), n + 2).unwrap();
        assert_eq!(r.objects, 1);
        assert_eq!(r.summands, 0);
        assert!(r.holds());
    }
}

#[test]
fn two_points_to_a_point() {
    let r = verify_total_differential(&map(1, &[0, 0]), 3).unwrap();
    assert_eq!(r.objects, 2);
    assert_eq!(r.summands, 1);
    assert!(r.holds(), "{:?}", r.residues);
}

#[test]
fn three_points_to_a_point() {
    let r = verify_total_differential(&map(1, &[0, 0, 0]), 4).unwrap();
    assert_eq!(r.objects, 2);
    assert!(r.holds(), "{:?}", r.residues);
}

#[test]
fn every_surjection_up_to_four_points() {
    let start = Instant::now();
    let reports = check_total_differential(4, 2, OperatorOptions::default(), Signs::STANDARD).unwrap();
    assert!(start.elapsed() < Duration::from_secs(300));
    assert_eq!(reports.len(), 11);
    for r in &reports {
        assert!(r.holds(), "{:?}: {:?}", r.ambient, r.residues);
    }
    assert!(reports.iter().map(|r| r.summands).sum::<usize>() > 0);
    let presymm = OperatorOptions { variant: Variant::Presymm, ..Default::default() };
    assert!(check_total_differential(4, 2, presymm, Signs::STANDARD).unwrap().iter().all(|r| r.holds()));
}

#[test]
fn beyond_the_required_bound() {
    for r in check_total_differential(4, 3, OperatorOptions::default(), Signs::STANDARD).unwrap() {
        assert!(r.holds(), "{:?}: {:?}", r.ambient, r.residues);
    }
}

#[test]
fn only_one_sign_assignment_passes() {
    let mut passing = Vec::new();
    for signs in Signs::all() {
        let reports = check_total_differential(4, 2, OperatorOptions::default(), signs).unwrap();
        if reports.iter().all(|r| r.holds()) {
            passing.push(signs);
        }
    }
    assert_eq!(passing, vec![Signs::STANDARD]);

    // The smallest witness against δ = L + R: two extra points over [2] → pt.
    let f = map(1, &[0, 0]);
    let scan = scan_signs(&f, 4, OperatorOptions::default()).unwrap();
    let plus = scan.iter().find(|r| r.signs == Signs::PLUS).unwrap();
    assert_eq!(plus.residues.len(), 1);
    assert_eq!(plus.residues[0].source, "2↪4 p=0000");
    assert_eq!(plus.residues[0].target, "2↪2 p=00");
    assert!(scan.iter().find(|r| r.signs == Signs::STANDARD).unwrap().holds());
    assert!(scan_signs(&f, 3, OperatorOptions::default()).unwrap().iter().all(|r| r.holds()));
}

#[test]
fn summed_sections_fail_under_every_sign() {
    let options = OperatorOptions { weighting: SectionWeighting::Sum, ..Default::default() };
    for r in scan_signs(&map(1, &[0, 0]), 4, options).unwrap() {
        assert!(!r.holds(), "{:?}", r.signs);
    }
}

#[test]
fn residues_report_bound_errors() {
    let options = OperatorOptions::default();
    assert!(total_differential_residues(&map(1, &[0, 0]), 99, options, Signs::STANDARD).is_err());
    assert!(total_differential_residues(&map(2, &[0, 0]), 3, options, Signs::STANDARD).is_err());
}
