use posets::{
    enumerate_segments, enumerate_zebra, initial_object, least_above, nu, segments_leq, zebra_leq,
    Color, IntervalIndex, SegmentsElement, ZebraElement,
};
use setcore::{enumerate_partitions, Partition};

fn part(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_blocks(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn z(flag: &[Partition], colors: &str) -> ZebraElement {
    let colors = colors
        .chars()
        .map(|c| if c == 'I' { Color::Capital } else { Color::Small })
        .collect();
    ZebraElement::new(flag.to_vec(), colors).unwrap()
}

fn seg(pairs: &[(&Partition, &Partition)]) -> SegmentsElement {
    SegmentsElement::new(pairs.iter().map(|(a, b)| ((*a).clone(), (*b).clone())).collect()).unwrap()
}

#[test]
fn leq_examples() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    let x = z(&[w.clone(), a.clone()], "I");
    let y = z(&[w.clone(), a.clone()], "i");
    assert!(zebra_leq(&x, &y).unwrap());
    assert!(!zebra_leq(&y, &x).unwrap());
    for s in ["ii", "iI", "Ii", "II"] {
        let refined = z(&[w.clone(), e12.clone(), a.clone()], s);
        assert_eq!(zebra_leq(&y, &refined).unwrap(), s == "ii");
        assert_eq!(zebra_leq(&x, &refined).unwrap(), s.ends_with('i'));
    }
    assert!(zebra_leq(&x, &z(&[Partition::discrete(4), Partition::indiscrete(4)], "I")).is_err());
}

#[test]
fn enumeration_counts() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    assert_eq!(enumerate_zebra(&w, &w).unwrap().len(), 1);
    assert_eq!(enumerate_zebra(&w, &e12).unwrap().len(), 2);
    assert_eq!(enumerate_zebra(&w, &a).unwrap().len(), 14);
}

#[test]
fn nu_examples() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    assert!(nu(&z(&[w.clone(), e12.clone(), a.clone()], "ii")).is_empty());
    assert_eq!(nu(&z(&[w.clone(), a.clone()], "I")), seg(&[(&w, &a)]));
    assert_eq!(nu(&z(&[w.clone(), e12.clone(), a.clone()], "Ii")), seg(&[(&w, &e12)]));
}

#[test]
fn segments_order_has_empty_flag_on_top() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    let empty = SegmentsElement::empty();
    let big = seg(&[(&w, &a)]);
    assert!(segments_leq(&big, &empty));
    assert!(!segments_leq(&empty, &big));
    assert!(segments_leq(&big, &seg(&[(&w, &e12)])));
    assert!(!segments_leq(&seg(&[(&w, &e12)]), &big));
}

#[test]
fn least_above_examples() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    let s = z(&[w.clone(), a.clone()], "I");
    assert_eq!(least_above(&s, &nu(&s)).unwrap(), Some(s.clone()));
    assert_eq!(
        least_above(&s, &seg(&[(&w, &e12)])).unwrap(),
        Some(z(&[w.clone(), e12.clone(), a.clone()], "Ii"))
    );
    assert_eq!(least_above(&s, &seg(&[(&e12, &a)])).unwrap(), None);
    let plain = z(&[w.clone(), a.clone()], "i");
    assert_eq!(least_above(&plain, &seg(&[(&w, &a)])).unwrap(), None);
    assert_eq!(least_above(&plain, &SegmentsElement::empty()).unwrap(), Some(plain.clone()));
}

#[test]
fn initial_object_examples() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let e12 = part(3, &[&[0, 1], &[2]]);
    assert_eq!(
        initial_object(&w, &a, &seg(&[(&w, &a)])).unwrap(),
        z(&[w.clone(), a.clone()], "I")
    );
    assert_eq!(
        initial_object(&w, &a, &SegmentsElement::empty()).unwrap(),
        z(&[w.clone(), a.clone()], "i")
    );
    assert_eq!(
        initial_object(&w, &a, &seg(&[(&w, &e12)])).unwrap(),
        z(&[w.clone(), e12.clone(), a.clone()], "Ii")
    );
    assert_eq!(
        initial_object(&w, &a, &seg(&[(&e12, &a)])).unwrap(),
        z(&[w.clone(), e12.clone(), a.clone()], "iI")
    );
}

#[test]
fn exhaustive_checks_up_to_four_points() {
    for n in 1..=4 {
        let ps = enumerate_partitions(n).unwrap();
        for f in &ps {
            for e in ps.iter().filter(|e| f.geq(e)) {
                let report = IntervalIndex::new(f, e).unwrap().verify().unwrap();
                assert!(report.all_hold(), "interval [{e},{f}]: {report:?}");
            }
        }
    }
}

#[test]
fn segments_enumeration_on_three_points() {
    let w = Partition::discrete(3);
    let a = Partition::indiscrete(3);
    let all = enumerate_segments(&w, &a).unwrap();
    let pairs = 3 + 3 + 1;
    let chains_of_two = 3;
    assert_eq!(all.len(), 1 + pairs + chains_of_two);
}
