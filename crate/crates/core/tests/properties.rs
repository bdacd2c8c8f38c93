use std::sync::OnceLock;

use gammacx_core::{
    algebra::{normal_form, Word},
    blowup::{collapse_partition, free_face_check, BlowupComplex},
    graph::{fixtures, small_graphs, OrderKind},
    isometry::{cubical_isometries, trivial_h1_audit},
    metric::{
        self, is_allowable, label_twist_leq, random_allowable, refit_frame, straighten, validate_allowable, TotalLabelOrder,
    },
    partition::{adjacent, compatible, compatible_collections, enumerate_partitions, LabelRef, WhiteheadPartition},
    set::SignedGenerator,
    DefiningGraph,
};
use proptest::prelude::*;

fn graphs() -> &'static [DefiningGraph] {
    static G: OnceLock<Vec<DefiningGraph>> = OnceLock::new();
    G.get_or_init(|| small_graphs(4))
}

/// Every blowup of every fixture graph.
fn fixture_blowups() -> &'static [BlowupComplex] {
    static B: OnceLock<Vec<BlowupComplex>> = OnceLock::new();
    B.get_or_init(|| {
        fixtures::all()
            .iter()
            .flat_map(|(_, g)| compatible_collections(g).into_iter().map(move |c| BlowupComplex::build(g, &c).unwrap()))
            .collect()
    })
}

fn word(n: usize, letters: &[(usize, bool)]) -> Word {
    Word(letters.iter().map(|&(v, inverse)| SignedGenerator { vertex: v % n, inverse }).collect())
}

proptest! {
    #[test]
    fn normal_form_ignores_commuting_swaps(
        gi in 0usize..18,
        letters in prop::collection::vec((0usize..4, any::<bool>()), 0..14),
        swaps in prop::collection::vec(0usize..14, 0..20),
        insert in (0usize..15, 0usize..4),
    ) {
        let g = &graphs()[gi % graphs().len()];
        let w = word(g.len(), &letters);
        let nf = normal_form(g, &w);
        prop_assert_eq!(normal_form(g, &nf), nf.clone());
        let mut shuffled = w.0.clone();
        for i in swaps {
            if i + 1 < shuffled.len() {
                let (a, b) = (shuffled[i].vertex, shuffled[i + 1].vertex);
                if a != b && g.adjacent(a, b) {
                    shuffled.swap(i, i + 1);
                }
            }
        }
        let at = insert.0.min(shuffled.len());
        let x = SignedGenerator::pos(insert.1 % g.len());
        shuffled.splice(at..at, [x, x.inv()]);
        prop_assert_eq!(normal_form(g, &Word(shuffled)), nf);
    }

    #[test]
    fn random_structures_straighten(bi in 0usize..1000, seed in any::<u64>(), t in 0.0f64..=1.0) {
        let b = &fixture_blowups()[bi % fixture_blowups().len()];
        let order = TotalLabelOrder::default_for(b);
        let s = random_allowable(b, &order, seed);
        prop_assert!(validate_allowable(b, &order, &s).is_empty());
        for t in [t, 1.0] {
            let st = straighten(&s, t).unwrap();
            prop_assert!(validate_allowable(b, &order, &st).is_empty());
            for f in &st.frames {
                for (j, &l) in f.labels.iter().enumerate() {
                    prop_assert!((f.column_norm(j) - s.lengths[l]).abs() <= metric::TOLERANCE);
                }
            }
        }
        prop_assert!(straighten(&s, 1.0).unwrap().is_rectilinear());
    }

    #[test]
    fn forbidden_shears_are_rejected(bi in 0usize..1000, seed in any::<u64>(), amount in 0.05f64..0.5) {
        let b = &fixture_blowups()[bi % fixture_blowups().len()];
        let order = TotalLabelOrder::default_for(b);
        let s = random_allowable(b, &order, seed);
        for (fi, f) in s.frames.iter().enumerate() {
            let n = f.labels.len();
            for i in 0..n {
                for j in i + 1..n {
                    if label_twist_leq(b, f.labels[j], f.labels[i]) {
                        continue;
                    }
                    let mut bad = s.clone();
                    bad.frames[fi].shear[i][j] = amount;
                    // a shear too large to refit is still a forbidden shear
                    let _ = refit_frame(&mut bad.frames[fi], &s.lengths);
                    let codes: Vec<&str> = validate_allowable(b, &order, &bad).iter().map(|d| d.code()).collect();
                    prop_assert!(codes.contains(&"shear_forbidden"), "{:?}", codes);
                }
            }
        }
    }

    #[test]
    fn free_faces_ignore_the_metric(bi in 0usize..1000, seed in any::<u64>()) {
        let b = &fixture_blowups()[bi % fixture_blowups().len()];
        let order = TotalLabelOrder::default_for(b);
        let s = random_allowable(b, &order, seed);
        prop_assert_eq!(metric::free_face_check(b, &s), free_face_check(b));
        prop_assert!(free_face_check(b));
    }

    #[test]
    fn shears_only_remove_symmetries(bi in 0usize..1000, seed in 0u64..1000) {
        let b = &fixture_blowups()[bi % fixture_blowups().len()];
        let order = TotalLabelOrder::default_for(b);
        let s = random_allowable(b, &order, seed);
        let straight = cubical_isometries(b, &straighten(&s, 1.0).unwrap());
        for f in cubical_isometries(b, &s) {
            prop_assert!(straight.contains(&f));
        }
        let report = trivial_h1_audit(b, &s);
        prop_assert_eq!(report.kernel_order, 1);
        prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
    }
}

#[test]
fn order_relations_on_small_graphs() {
    for g in graphs() {
        let n = g.len();
        for kind in [OrderKind::Fold, OrderKind::Twist] {
            for u in 0..n {
                assert!(g.order_leq(u, u, kind));
                for v in 0..n {
                    for w in 0..n {
                        if g.order_leq(u, v, kind) && g.order_leq(v, w, kind) {
                            assert!(g.order_leq(u, w, kind));
                        }
                    }
                }
            }
        }
        let center: Vec<usize> = (0..n).filter(|&v| g.star(v) == g.vertices()).collect();
        assert_eq!(g.central_clique().iter().collect::<Vec<_>>(), center);
        // a twist-dominant vertex has no proper fold-dominator
        for v in (0..n).filter(|&v| g.twist_dominant(v)) {
            for u in (0..n).filter(|&u| u != v) {
                assert!(!g.link(v).is_subset(g.link(u)), "{g:?} {v} {u}");
            }
        }
    }
}

#[test]
fn partition_invariants_on_small_graphs() {
    for g in graphs() {
        let parts = enumerate_partitions(g);
        for p in &parts {
            // twist-dominant split vertices are alone in max
            for v in p.sing().iter().filter(|&v| g.twist_dominant(v)) {
                assert_eq!(p.max_set(g).iter().collect::<Vec<_>>(), [v]);
            }
            let again = WhiteheadPartition::from_sides(g, p.minus, p.plus).unwrap();
            assert_eq!((again.sing(), again.max_set(g)), (p.sing(), p.max_set(g)));
            assert_eq!(WhiteheadPartition::parse(g, &p.display(g)).unwrap(), *p);
        }
        for p in &parts {
            for q in parts.iter().filter(|q| *q != p) {
                let a = adjacent(g, LabelRef::Partition(p), LabelRef::Partition(q)).unwrap();
                assert_eq!(a, adjacent(g, LabelRef::Partition(q), LabelRef::Partition(p)).unwrap());
                let c = compatible(g, p, q).unwrap();
                assert_eq!(c, compatible(g, q, p).unwrap());
                assert!(!a || c);
            }
            for v in 0..g.len() {
                let x = adjacent(g, LabelRef::Vertex(v), LabelRef::Partition(p)).unwrap();
                assert_eq!(x, adjacent(g, LabelRef::Partition(p), LabelRef::Vertex(v)).unwrap());
            }
        }
    }
}

#[test]
fn collapse_order_does_not_matter() {
    for b in fixture_blowups() {
        let salvetti = BlowupComplex::salvetti(b.graph());
        let k = b.partitions().len();
        let mut orders: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for o in &orders {
                for i in (0..k).filter(|i| !o.contains(i)) {
                    next.push([o.clone(), vec![i]].concat());
                }
            }
            orders = next;
        }
        for order in orders {
            let mut cur = b.clone();
            let mut alive: Vec<usize> = (0..k).collect();
            for i in order {
                let pos = alive.iter().position(|&x| x == i).unwrap();
                alive.remove(pos);
                cur = collapse_partition(&cur, pos).unwrap().0;
                let rest: Vec<WhiteheadPartition> = alive.iter().map(|&j| b.partitions()[j]).collect();
                assert_eq!(cur.f_vector(), BlowupComplex::build(b.graph(), &rest).unwrap().f_vector());
            }
            assert_eq!(cur.f_vector(), salvetti.f_vector());
            assert_eq!(cur.regions(), salvetti.regions());
        }
    }
}

#[test]
fn allowable_samples_are_deterministic() {
    for b in fixture_blowups() {
        let order = TotalLabelOrder::default_for(b);
        let s = random_allowable(b, &order, 17);
        assert_eq!(s, random_allowable(b, &order, 17));
        assert!(is_allowable(b, &order, &s));
    }
}
