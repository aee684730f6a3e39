use std::collections::BTreeSet;

use gcg::degeneration::{
    self, even_genus_data, is_compatible, limit_planes, make_correspondence, odd_genus_data,
    standard_data, tilde_data, verify_union, Anchor, CorrKind, DegenerationError, PlaneKind,
    RationalCycle, SurvivorSet,
};
use gcg::planes::{config_from_graph, Span};
use gcg::{ab_decomposition, standard_graph, tilde_graph};
use proptest::prelude::*;

#[test]
fn odd_data_compatible_for_every_n() {
    for n in 3..=15 {
        let d = odd_genus_data(n).unwrap();
        let g = 2 * n + 1;
        assert_eq!(d.genus(), g);
        for corr in [&d.a, &d.b] {
            let c = is_compatible(&d.survivors, corr);
            assert!(c.compatible, "n={n}: {:?}", c.violations);
            let chain = limit_planes(&d.survivors, corr).unwrap();
            assert_eq!(chain.planes.len(), g - 1);
            assert_eq!(
                chain
                    .planes
                    .iter()
                    .filter(|p| p.kind == PlaneKind::Alpha)
                    .count(),
                2
            );
        }
    }
}

#[test]
fn even_data_compatible_where_well_formed() {
    for n in 4..=12 {
        let d = even_genus_data(n).unwrap();
        assert_eq!(d.genus(), 2 * n + 2);
        for corr in [&d.a, &d.b] {
            let c = is_compatible(&d.survivors, corr);
            assert!(c.compatible, "n={n}: {:?}", c.violations);
        }
    }
}

#[test]
fn even_data_at_n3_is_malformed() {
    match even_genus_data(3) {
        Err(DegenerationError::MalformedData { expression, detail }) => {
            assert_eq!(expression, "8n+6[(n-1)/2]-[(n-2)/2]-11");
            assert!(detail.contains("19"), "{detail}");
        }
        other => panic!("expected malformed data, got {other:?}"),
    }
}

#[test]
fn unions_match_the_standard_configurations() {
    for g in (7..=20).filter(|&g| g != 8) {
        let d = standard_data(g).unwrap();
        let target = config_from_graph(&standard_graph(g).unwrap()).unwrap();
        let colors = ab_decomposition(g).unwrap().colors();
        let r = verify_union(&d, &target, Some(&colors)).unwrap();
        assert!(r.isomorphic, "g={g}: {:?}", r.mismatch);
        assert_eq!((r.planes_a, r.planes_b), (g - 1, g - 1));
    }
}

#[test]
fn g7_first_limit_reproduces_the_span_table() {
    let d = standard_data(7).unwrap();
    let chain = limit_planes(&d.survivors, &d.a).unwrap();
    let got: BTreeSet<Span> = chain.planes.iter().map(|p| p.span).collect();
    let want: BTreeSet<Span> = [
        Span::lines(1, 8),
        Span::lines(4, 5),
        Span::point_line(5, 2),
        Span::point_line(5, 3),
        Span::point_line(1, 6),
        Span::point_line(1, 7),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
}

#[test]
fn tilde_data_reproduce_the_tilde_graphs() {
    for g in [7, 8] {
        let d = tilde_data(g).unwrap();
        let target = config_from_graph(&tilde_graph(g).unwrap()).unwrap();
        let r = verify_union(&d, &target, None).unwrap();
        assert!(r.isomorphic, "g={g}: {:?}", r.mismatch);
    }
    let d7 = tilde_data(7).unwrap();
    assert_eq!(d7.b.kind, CorrKind::I);
    assert_eq!(d7.b.fixed_points(), vec![3, 12]);
}

#[test]
fn tilde_unions_are_not_the_standard_ones() {
    let d = tilde_data(7).unwrap();
    let target = config_from_graph(&standard_graph(7).unwrap()).unwrap();
    assert!(!verify_union(&d, &target, None).unwrap().isomorphic);
}

#[test]
fn dropping_an_end_survivor_breaks_the_pairing() {
    let d = odd_genus_data(4).unwrap();
    let ends = is_compatible(&d.survivors, &d.a).end_pairs;
    for pair in ends {
        let labels: Vec<usize> = d
            .survivors
            .labels
            .iter()
            .copied()
            .filter(|&l| l != pair[0])
            .collect();
        let s = SurvivorSet::new(d.cycle(), &labels).unwrap();
        let r = is_compatible(&s, &d.a);
        assert!(!r.compatible);
    }
}

#[test]
fn dropping_an_inner_survivor_lowers_the_genus() {
    let d = odd_genus_data(4).unwrap();
    let ends: Vec<usize> = is_compatible(&d.survivors, &d.a)
        .end_pairs
        .iter()
        .flatten()
        .copied()
        .collect();
    let inner = *d
        .survivors
        .labels
        .iter()
        .find(|l| !ends.contains(l))
        .unwrap();
    let labels: Vec<usize> = d
        .survivors
        .labels
        .iter()
        .copied()
        .filter(|&l| l != inner)
        .collect();
    let s = SurvivorSet::new(d.cycle(), &labels).unwrap();
    assert_eq!(s.genus(), d.genus() - 1);
    if is_compatible(&s, &d.a).compatible {
        assert_eq!(limit_planes(&s, &d.a).unwrap().planes.len(), d.genus() - 2);
    }
}

#[test]
fn out_of_range_labels_are_rejected() {
    let c = RationalCycle::new(20, 1);
    assert!(SurvivorSet::new(c, &[0, 3, 5]).is_err());
    assert!(SurvivorSet::new(c, &[3, 3, 5, 9]).is_err());
    assert!(make_correspondence(c, CorrKind::Iii, Anchor::VertexAfter(21)).is_err());
}

fn corr_strategy() -> impl Strategy<Value = degeneration::DoubleCorrespondence> {
    (3usize..40, 0usize..3, 0usize..40, 0usize..2).prop_filter_map(
        "parity",
        |(k, kind, a, base)| {
            let cycle = RationalCycle::new(k, base);
            let a = cycle.label(a % k);
            let (kind, anchor) = match kind {
                0 => (CorrKind::I, Anchor::Component(a)),
                1 => (CorrKind::Ii, Anchor::Component(a)),
                _ => (CorrKind::Iii, Anchor::VertexAfter(a)),
            };
            make_correspondence(cycle, kind, anchor).ok()
        },
    )
}

proptest! {
    #[test]
    fn partner_is_an_involution(corr in corr_strategy()) {
        for j in corr.cycle.labels() {
            let p = corr.partner(j);
            prop_assert_eq!(corr.partner(p), j);
            prop_assert_eq!((j + p) % corr.cycle.k, corr.c);
        }
    }

    #[test]
    fn fixed_point_count_follows_the_kind(corr in corr_strategy()) {
        let want = match corr.kind {
            CorrKind::I => 2,
            CorrKind::Ii => 1,
            CorrKind::Iii => 0,
        };
        prop_assert_eq!(corr.fixed_points().len(), want);
        let orbits = corr.pairs().len();
        prop_assert_eq!(2 * orbits - want, corr.cycle.k);
    }

    #[test]
    fn survivor_points_wrap(n in 3usize..12, pick in 0usize..64) {
        let d = odd_genus_data(n).unwrap();
        let s = &d.survivors;
        let m = s.labels.len();
        let contracted: Vec<usize> = d.cycle().labels().filter(|&j| !s.contains(j)).collect();
        let j = contracted[pick % contracted.len()];
        let p = s.point_of(j).unwrap();
        prop_assert!((1..=m).contains(&p));
        let below = s.labels.iter().filter(|&&l| l < j).count();
        let want = if below == 0 { m } else { below };
        prop_assert_eq!(p, want);
    }
}
