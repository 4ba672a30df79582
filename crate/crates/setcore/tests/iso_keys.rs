use std::collections::BTreeSet;

use setcore::{all_maps, all_permutations, canonical_key, surjections, Diagram, SetMap};

fn chain_diagram(s: usize, u: usize, t: usize, first: &[usize], second: &[usize], boundary: bool) -> Diagram {
    let mut d = Diagram::new();
    let a = d.add_set(s, boundary);
    let b = d.add_set(u, false);
    let c = d.add_set(t, boundary);
    d.add_map(a, b, &SetMap::from_images(u, first.to_vec()).unwrap()).unwrap();
    d.add_map(b, c, &SetMap::from_images(t, second.to_vec()).unwrap()).unwrap();
    d
}

#[test]
fn proper_factorizations_of_three_points() {
    let mut classes = BTreeSet::new();
    let mut shapes = BTreeSet::new();
    for u in 2..3 {
        for first in surjections(3, u) {
            let second = vec![0; u];
            let d = chain_diagram(3, u, 1, &first, &second, true);
            classes.insert(canonical_key(&d).unwrap());
            shapes.insert(canonical_key(&d.all_interior()).unwrap());
        }
    }
    assert_eq!(classes.len(), 3);
    assert_eq!(shapes.len(), 1);
}

#[test]
fn key_is_invariant_and_separating_for_small_interiors() {
    for u in 1..=5 {
        let s = 2;
        let t = 2;
        let firsts = all_maps(s, u);
        let seconds = all_maps(u, t);
        let mut by_key: std::collections::BTreeMap<_, Vec<(Vec<usize>, Vec<usize>)>> = Default::default();
        for f in &firsts {
            for g in seconds.iter().step_by(if u >= 4 { 5 } else { 1 }) {
                let d = chain_diagram(s, u, t, f, g, true);
                by_key.entry(canonical_key(&d).unwrap()).or_default().push((f.clone(), g.clone()));
            }
        }
        let perms = all_permutations(u);
        let orbit = |f: &[usize], g: &[usize]| -> BTreeSet<(Vec<usize>, Vec<usize>)> {
            perms
                .iter()
                .map(|p| {
                    let nf: Vec<usize> = f.iter().map(|&x| p[x]).collect();
                    let mut ng = vec![0; u];
                    for x in 0..u {
                        ng[p[x]] = g[x];
                    }
                    (nf, ng)
                })
                .collect()
        };
        let keys: Vec<_> = by_key.keys().cloned().collect();
        for (i, k) in keys.iter().enumerate() {
            let members = &by_key[k];
            let o = orbit(&members[0].0, &members[0].1);
            for m in members {
                assert!(o.contains(m), "key merges two orbits at u = {u}");
            }
            for other in &keys[i + 1..] {
                for m in &by_key[other] {
                    assert!(!o.contains(m), "orbit split across keys at u = {u}");
                }
            }
        }
    }
}

#[test]
fn different_level_sizes_give_different_keys() {
    let a = chain_diagram(2, 2, 1, &[0, 1], &[0, 0], true);
    let b = chain_diagram(2, 3, 1, &[0, 1], &[0, 0, 0], true);
    assert_ne!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
}
