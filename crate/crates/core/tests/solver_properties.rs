mod common;

use common::*;
use ctwcsp::graph::members;
use ctwcsp::oracle::DEFAULT_CAP;
use ctwcsp::{
    check_join_lemma, check_split_identity, contract, e_components, enumerate_restricted, omega_of_set, solve_brute,
    solve_fine, solve_fine_observed, solve_fpt, solve_fpt_observed, sr_add, validate_sequence, EdgeLabelledGraph,
    JoinVariant, MorphismRelation, PreMorphism, ProfileSnapshot, SemiringValue, WeightMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn union(sets: &[u64]) -> u64 {
    sets.iter().fold(0, |a, b| a | b)
}

fn random_problem(rng: &mut ChaCha8Rng) -> (EdgeLabelledGraph, EdgeLabelledGraph, MorphismRelation) {
    let n = rng.gen_range(0..5);
    let g = random_graph(n, 2, rng);
    let ts = templates();
    let h = ts[rng.gen_range(0..ts.len())].1.clone();
    let r = if rng.gen_bool(0.5) { MorphismRelation::hom() } else { random_relation(2, 2, rng) };
    (g, h, r)
}

#[test]
fn fine_matches_brute_force_for_every_template_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, h) in templates() {
        let sequences: Vec<_> = if h.vertex_count() <= 3 {
            all_merge_lists(h.vertex_count()).iter().map(|m| validate_sequence(&h, m).unwrap()).collect()
        } else {
            (0..6).map(|_| random_sequence(&h, &mut rng)).collect()
        };
        for _ in 0..15 {
            let g = random_graph(rng.gen_range(0..5), 2, &mut rng);
            let r = if rng.gen_bool(0.3) { MorphismRelation::hom() } else { random_relation(2, 2, &mut rng) };
            for pm in PreMorphism::ALL {
                let w = WeightMatrix::random(pm.spec().weight_domain, g.vertex_count(), h.vertex_count(), &mut rng);
                let expected = solve_brute(&g, &h, &r, pm, &w).unwrap();
                for seq in &sequences {
                    assert_eq!(solve_fine(&g, &h, &r, seq, pm, &w).unwrap(), expected, "{name} {pm}");
                }
            }
        }
    }
}

#[test]
fn fpt_matches_brute_force_for_every_instance_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..60 {
        let (g, h, r) = random_problem(&mut rng);
        let sequences: Vec<_> = all_merge_lists(g.vertex_count())
            .iter()
            .map(|m| validate_sequence(&g, m).unwrap())
            .collect();
        for pm in PreMorphism::ALL.into_iter().filter(|pm| pm.spec().fpt_eligible()) {
            let w = WeightMatrix::random(pm.spec().weight_domain, g.vertex_count(), h.vertex_count(), &mut rng);
            let expected = solve_brute(&g, &h, &r, pm, &w).unwrap();
            for seq in &sequences {
                assert_eq!(solve_fpt(&g, seq, &h, &r, pm, &w).unwrap(), expected, "{pm}");
            }
        }
    }
}

#[test]
fn fine_tables_hold_restricted_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let (g, h, r) = random_problem(&mut rng);
        let seq = random_sequence(&h, &mut rng);
        let pm = PreMorphism::ALL[rng.gen_range(0..PreMorphism::ALL.len())];
        let w = WeightMatrix::random(pm.spec().weight_domain, g.vertex_count(), h.vertex_count(), &mut rng);
        let mut snapshots: Vec<ProfileSnapshot> = Vec::new();
        let mut keep = |s: &ProfileSnapshot| snapshots.push(s.clone());
        solve_fine_observed(&g, &h, &r, &seq, pm, &w, Some(&mut keep)).unwrap();
        assert_eq!(snapshots.len(), h.vertex_count());
        for snap in &snapshots {
            for table in &snap.tables {
                for _ in 0..4 {
                    let (s, value) = &table.entries[rng.gen_range(0..table.entries.len())];
                    let fs = enumerate_restricted(&g, &h, &r, s, &table.part_sets, false, DEFAULT_CAP).unwrap();
                    let expected = omega_of_set(pm, &w, union(s), union(&table.part_sets), &fs).unwrap();
                    assert_eq!(value, &expected, "{pm} after {} merges", snap.merges_done);
                }
            }
        }
    }
}

#[test]
fn fpt_tables_hold_exact_image_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let (mut g, h, r) = random_problem(&mut rng);
        if g.vertex_count() == 0 {
            g = random_graph(2, 2, &mut rng);
        }
        let seq = random_sequence(&g, &mut rng);
        let eligible: Vec<PreMorphism> = PreMorphism::ALL.into_iter().filter(|p| p.spec().fpt_eligible()).collect();
        let pm = eligible[rng.gen_range(0..eligible.len())];
        let w = WeightMatrix::random(pm.spec().weight_domain, g.vertex_count(), h.vertex_count(), &mut rng);
        let mut snapshots: Vec<ProfileSnapshot> = Vec::new();
        let mut keep = |s: &ProfileSnapshot| snapshots.push(s.clone());
        solve_fpt_observed(&g, &seq, &h, &r, pm, &w, Some(&mut keep)).unwrap();
        assert_eq!(snapshots.len(), g.vertex_count());
        for snap in &snapshots {
            for table in &snap.tables {
                assert!(table.entries.iter().all(|(t, _)| t.iter().all(|&x| x != 0)));
                for _ in 0..4 {
                    let (t, value) = &table.entries[rng.gen_range(0..table.entries.len())];
                    let fs = enumerate_restricted(&g, &h, &r, &table.part_sets, t, true, DEFAULT_CAP).unwrap();
                    let expected = omega_of_set(pm, &w, union(&table.part_sets), union(t), &fs).unwrap();
                    assert_eq!(value, &expected, "{pm} after {} merges", snap.merges_done);
                }
            }
        }
    }
}

#[test]
fn exact_image_entries_sum_to_the_fine_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let (mut g, h, r) = random_problem(&mut rng);
        if g.vertex_count() == 0 {
            g = random_graph(1, 2, &mut rng);
        }
        let seq_g = random_sequence(&g, &mut rng);
        let seq_h = random_sequence(&h, &mut rng);
        for pm in PreMorphism::ALL.into_iter().filter(|p| p.spec().fpt_eligible()) {
            let w = WeightMatrix::random(pm.spec().weight_domain, g.vertex_count(), h.vertex_count(), &mut rng);
            let mut last: Option<ProfileSnapshot> = None;
            let mut keep = |s: &ProfileSnapshot| last = Some(s.clone());
            solve_fpt_observed(&g, &seq_g, &h, &r, pm, &w, Some(&mut keep)).unwrap();
            let last = last.unwrap();
            assert_eq!(last.tables.len(), 1);
            assert_eq!(last.tables[0].part_sets, vec![g.all_vertices()]);
            let total = last.tables[0]
                .entries
                .iter()
                .fold(SemiringValue::zero(pm.carrier()), |acc, (_, v)| sr_add(pm, &acc, v).unwrap());
            assert_eq!(total, solve_fine(&g, &h, &r, &seq_h, pm, &w).unwrap(), "{pm}");
        }
    }
}

/// Parts of a random nonempty union of whole e-components.
fn whole_components(contracted: &EdgeLabelledGraph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let comps = e_components(contracted);
    let mut parts: Vec<usize> = Vec::new();
    for comp in &comps {
        if rng.gen_bool(0.6) {
            parts.extend(comp);
        }
    }
    if parts.is_empty() {
        parts.extend(&comps[rng.gen_range(0..comps.len())]);
    }
    parts
}

#[test]
fn join_lemma_with_containment() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut multi = 0;
    for _ in 0..200 {
        let m = rng.gen_range(1..6);
        let n = rng.gen_range(0..5);
        let h = random_graph(m, 2, &mut rng);
        let g = random_graph(n, 2, &mut rng);
        let r = random_relation(2, 2, &mut rng);
        let p = random_partition(m, m, &mut rng);
        let hp = contract(&h, &p).unwrap();
        let part_sets: Vec<u64> = (0..p.len()).map(|i| p.part_set(i)).collect();
        let parts = whole_components(&hp, &mut rng);
        multi += (e_components(&hp).iter().filter(|c| c.iter().all(|x| parts.contains(x))).count() > 1) as usize;
        let s = random_disjoint(n, parts.len(), &mut rng);
        assert!(check_join_lemma(&g, &h, &r, &hp, &part_sets, &parts, &s, JoinVariant::Containment, DEFAULT_CAP).unwrap());
    }
    assert!(multi > 20);
}

#[test]
fn join_lemma_with_exact_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let m = rng.gen_range(1..5);
        let n = rng.gen_range(1..5);
        let h = random_graph(m, 2, &mut rng);
        let g = random_graph(n, 2, &mut rng);
        let r = random_relation(2, 2, &mut rng);
        let p = random_partition(n, n, &mut rng);
        let gp = contract(&g, &p).unwrap();
        let part_sets: Vec<u64> = (0..p.len()).map(|i| p.part_set(i)).collect();
        let parts = whole_components(&gp, &mut rng);
        let t: Vec<u64> = parts.iter().map(|_| rng.gen_range(1..1u64 << m)).collect();
        assert!(check_join_lemma(&g, &h, &r, &gp, &part_sets, &parts, &t, JoinVariant::ExactImage, DEFAULT_CAP).unwrap());
    }
}

#[test]
fn split_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let m = rng.gen_range(2..6);
        let n = rng.gen_range(0..5);
        let h = random_graph(m, 2, &mut rng);
        let g = random_graph(n, 2, &mut rng);
        let r = if rng.gen_bool(0.3) { MorphismRelation::hom() } else { random_relation(2, 2, &mut rng) };
        let count = rng.gen_range(0..3);
        let targets = random_disjoint(m, count + 2, &mut rng);
        let (t, split) = targets.split_at(count);
        let sources = random_disjoint(n, count + 1, &mut rng);
        let (s, s0) = sources.split_at(count);
        assert!(check_split_identity(&g, &h, &r, s, t, s0[0], split[0], split[1], DEFAULT_CAP).unwrap());
    }
}

#[test]
fn restricted_sets_respect_their_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut witness = false;
    for _ in 0..300 {
        let (g, h, r) = random_problem(&mut rng);
        let (n, m) = (g.vertex_count(), h.vertex_count());
        let s = random_disjoint(n, 2, &mut rng);
        let t: Vec<u64> = (0..2).map(|_| rng.gen_range(1..1u64 << m)).collect();
        let loose = enumerate_restricted(&g, &h, &r, &s, &t, false, DEFAULT_CAP).unwrap();
        let exact = enumerate_restricted(&g, &h, &r, &s, &t, true, DEFAULT_CAP).unwrap();
        assert!(exact.iter().all(|f| loose.contains(f)));
        for f in &loose {
            for (si, ti) in s.iter().zip(&t) {
                assert!(members(*si).all(|u| ti >> f[u] & 1 == 1));
            }
        }
        witness |= exact.is_empty() && !loose.is_empty();
    }
    assert!(witness);
}
