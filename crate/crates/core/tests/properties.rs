use proptest::prelude::*;
use subset_base::verify::is_base;
use subset_base::{
    base_size, closed_form, construct, find_min_l, lower_bound, random_irrepeating, witness_valid,
    ActionSpec, BaseFamily, FamilyDocument, Hypergraph,
};

fn domain() -> impl Strategy<Value = (u64, u64)> {
    (1u64..200).prop_flat_map(|r| (2 * r..2 * r + 400).prop_map(move |n| (n, r)))
}

proptest! {
    #[test]
    fn base_size_between_bounds((n, r) in domain()) {
        let spec = ActionSpec::symmetric(n, r).unwrap();
        let b = base_size(&spec).unwrap();
        prop_assert!(b >= lower_bound(n, r).unwrap());
        prop_assert!(b <= n);
    }

    #[test]
    fn witness_is_minimal((n, r) in domain()) {
        let w = find_min_l(n, r).unwrap();
        prop_assert!(witness_valid(w.l, w.k, n, r));
        for l in lower_bound(n, r).unwrap()..w.l {
            prop_assert!((1..=l + 1).all(|k| !witness_valid(l, k, n, r)));
        }
        prop_assert!((1..w.k).all(|k| !witness_valid(w.l, k, n, r)));
    }

    #[test]
    fn alternating_shifts_symmetric((n, r) in domain()) {
        let alt = ActionSpec::alternating(n + 1, r).unwrap();
        let sym = ActionSpec::symmetric(n, r).unwrap();
        prop_assert_eq!(base_size(&alt).unwrap(), base_size(&sym).unwrap());
    }

    #[test]
    fn closed_forms_agree((n, r) in domain()) {
        if let Some((form, value)) = closed_form(n, r) {
            let b = base_size(&ActionSpec::symmetric(n, r).unwrap()).unwrap();
            prop_assert_eq!(value, b, "{}", form.name());
        }
    }

    #[test]
    fn dual_swaps_sizes(l in 1u32..9, extra in 0usize..8, seed in any::<u64>()) {
        let n = (l as usize).min(3) + extra;
        if let Ok(h) = random_irrepeating(l, n, n, seed) {
            let d = h.dual().unwrap();
            prop_assert_eq!(d.vertex_count() as usize, h.edge_count());
            prop_assert_eq!(d.edge_count(), h.vertex_count() as usize);
            prop_assert!(d.is_irrepeating());
            prop_assert_eq!(d.dual().unwrap().dual().unwrap(), d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_verify(r in 1u64..8, offset in 0u64..60, at_most in any::<bool>(), alt in any::<bool>()) {
        let n = 2 * r + offset + u64::from(alt);
        let mut spec = if alt {
            ActionSpec::alternating(n, r).unwrap()
        } else {
            ActionSpec::symmetric(n, r).unwrap()
        };
        if at_most {
            spec = spec.at_most();
        }
        let c = construct(&spec).unwrap();
        prop_assert!(is_base(&c.family, &spec).unwrap());
        prop_assert_eq!(c.family.len() as u64, base_size(&spec).unwrap());
        prop_assert_eq!(c.hypergraph.vertex_count() as u64, c.witness.l);

        let doc = c.family.to_document(&spec);
        let json = serde_json::to_string(&doc).unwrap();
        let back: FamilyDocument = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.family().unwrap(), c.family.clone());
        prop_assert_eq!(back.spec().unwrap(), spec);
    }
}

#[test]
fn hypergraph_json_round_trip() {
    let h = Hypergraph::new(3, vec![vec![], vec![1], vec![2, 3], vec![1, 3]]).unwrap();
    let json = serde_json::to_string(&h).unwrap();
    assert_eq!(serde_json::from_str::<Hypergraph>(&json).unwrap(), h);
    let legacy = r#"{"vertices":3,"edges":[[1],[2]]}"#;
    assert_eq!(
        serde_json::from_str::<Hypergraph>(legacy)
            .unwrap()
            .edge_count(),
        2
    );
    assert!(serde_json::from_str::<Hypergraph>(r#"{"vertices":1,"edges":[[2]]}"#).is_err());
}

#[test]
fn family_rejects_bad_points() {
    assert!(BaseFamily::new(3, vec![vec![0]]).is_err());
    assert!(BaseFamily::new(3, vec![vec![4]]).is_err());
    assert!(BaseFamily::new(3, vec![vec![1, 1]]).is_err());
}
