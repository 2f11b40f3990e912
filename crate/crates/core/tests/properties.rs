use proptest::prelude::*;

use qsaf::analyze::{compare, primitive_profile, tier_of_row, Context, HardwareEra, TradeoffOption};
use qsaf::catalog::{self, lower, sized_params, ParamValue, Params, PrimitiveId};
use qsaf::circuit::GateCircuit;
use qsaf::gate::Gate;
use qsaf::manifest::parse_params;
use qsaf::model::UsageLevel;
use qsaf::qasm::{export_qasm, format_angle};
use qsaf::sim::{evolve, Initial};

fn lowerable() -> Vec<u8> {
    catalog::catalog().iter().filter(|d| d.lowerable).map(|d| d.id.get()).collect()
}

fn usage() -> impl Strategy<Value = UsageLevel> {
    prop_oneof![
        Just(UsageLevel::NotUsed),
        Just(UsageLevel::SometimesUsed),
        Just(UsageLevel::FrequentlyUsed),
        Just(UsageLevel::Essential),
    ]
}

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    let pair = (0..width, 0..width).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        q.clone().prop_map(Gate::h),
        q.clone().prop_map(Gate::t),
        (q.clone(), -6.3..6.3f64).prop_map(|(q, t)| Gate::ry(t, q)),
        (q, -6.3..6.3f64).prop_map(|(q, t)| Gate::rz(t, q)),
        pair.clone().prop_map(|(a, b)| Gate::cnot(a, b)),
        (pair, -6.3..6.3f64).prop_map(|((a, b), t)| Gate::cphase(t, a, b)),
    ]
}

fn circuit() -> impl Strategy<Value = GateCircuit> {
    (2usize..5).prop_flat_map(|w| {
        proptest::collection::vec(gate(w), 0..30).prop_map(move |gates| {
            let mut c = GateCircuit::new(w);
            for g in gates {
                c.push(g);
            }
            c
        })
    })
}

proptest! {
    #[test]
    fn tier_ignores_column_order(row in proptest::array::uniform5(usage()), perm in Just([0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let shuffled: Vec<UsageLevel> = perm.iter().map(|&i| row[i]).collect();
        prop_assert_eq!(tier_of_row(&row), tier_of_row(&shuffled));
    }

    #[test]
    fn compare_is_antisymmetric(i in 0usize..100, j in 0usize..100, n in 2usize..5, ft in any::<bool>()) {
        let ids = lowerable();
        let (a, b) = (ids[i % ids.len()], ids[j % ids.len()]);
        let ctx = Context::new(if ft { HardwareEra::FaultTolerant } else { HardwareEra::Nisq });
        let option = |k: u8| TradeoffOption::primitive(k, &sized_params(PrimitiveId::new(k).unwrap(), n), &ctx);
        if let (Ok(oa), Ok(ob)) = (option(a), option(b)) {
            let ab = compare(&oa, &ob, &ctx);
            let ba = compare(&ob, &oa, &ctx);
            prop_assert_eq!(ab.recommendation.flip(), ba.recommendation);
            for (x, y) in ab.rows.iter().zip(&ba.rows) {
                prop_assert_eq!(&x.swapped(), y);
            }
        }
    }

    #[test]
    fn profile_counts_agree_with_the_circuit(i in 0usize..100, n in 2usize..6) {
        let ids = lowerable();
        let id = PrimitiveId::new(ids[i % ids.len()]).unwrap();
        let params = sized_params(id, n);
        if let Ok(c) = lower(id, &params) {
            let p = primitive_profile(id, &params, &Context::new(HardwareEra::Nisq)).unwrap();
            let m = p.complexity.unwrap();
            let counts = c.gate_counts();
            prop_assert_eq!(m.two_qubit_count, counts.two_qubit);
            prop_assert_eq!(m.gate_count, counts.total);
            prop_assert_eq!(m.depth, c.depth());
            prop_assert!(p.nisq_suitable.is_some());
        }
    }

    #[test]
    fn evolution_preserves_norm(c in circuit()) {
        let s = evolve(&c, Initial::Zero).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dagger_undoes_the_circuit(c in circuit()) {
        let mut round = c.clone();
        round.extend(&c.dagger().unwrap()).unwrap();
        let s = evolve(&round, Initial::Zero).unwrap();
        prop_assert!((s.probability(0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn export_is_deterministic(c in circuit()) {
        let first = export_qasm(&c).unwrap();
        prop_assert_eq!(&first, &export_qasm(&c.clone()).unwrap());
        prop_assert_eq!(first.lines().count(), 3 + c.len());
    }

    #[test]
    fn angles_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_angle(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn params_round_trip(n in 1usize..50, t in -100.0..100.0f64, list in proptest::collection::vec(0usize..16, 0..5), word in "[a-z][a-z0-9+-]{0,6}") {
        let p = Params::new().with("n", n).with("theta", t).with("marked", list).with("variant", ParamValue::Text(word));
        let back = parse_params(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }
}
