use poscomp::dual::{precompose, ValuedMap};
use poscomp::format::Document;
use poscomp::gen;
use poscomp::seq::{delta, gamma, in_class_c, mu, Seq01};
use poscomp::Rat01;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid_value() -> impl Strategy<Value = Rat01> {
    (0u32..=16).prop_map(|k| Rat01::grid_point(k, 16))
}

fn sequence() -> impl Strategy<Value = Seq01> {
    (prop::collection::vec(grid_value(), 0..6), grid_value())
        .prop_map(|(prefix, tail)| Seq01::new(prefix, tail))
}

proptest! {
    #[test]
    fn gamma_mu_lands_in_class_c(s in sequence()) {
        prop_assert!(in_class_c(&gamma(&mu(&s))));
    }

    #[test]
    fn delta_is_monotone_and_nonexpansive(a in sequence(), b in sequence()) {
        let j = Seq01::new(
            (0..a.prefix().len().max(b.prefix().len())).map(|n| a.at(n).join(&b.at(n))).collect(),
            a.tail_value().join(b.tail_value()),
        );
        prop_assert!(delta(&a) <= delta(&j));
        prop_assert!(delta(&a).abs_diff(&delta(&b)) <= a.sup_distance(&b));
    }

    #[test]
    fn delta_of_a_constant_is_that_constant(u in grid_value()) {
        prop_assert_eq!(delta(&Seq01::constant(u.clone())), u);
    }

    #[test]
    fn precomposition_preserves_joins(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = gen::poset_up_to(&mut rng, 3);
        let y = gen::poset_up_to(&mut rng, 3);
        if let Some(f) = gen::mono_map(&mut rng, &x, &y) {
            let pick = |rng: &mut ChaCha8Rng| {
                let mut vals: Vec<Rat01> = Vec::new();
                for i in 0..y.len() {
                    // joining in the values below keeps the assignment monotone
                    let below = (0..i).filter(|&j| y.le(j, i)).map(|j| vals[j].clone());
                    vals.push(below.fold(gen::grid_value(rng, 4), |acc, b| acc.join(&b)));
                }
                ValuedMap::new(&y, vals)
            };
            if let (Ok(p), Ok(q)) = (pick(&mut rng), pick(&mut rng)) {
                let lhs = precompose(&f, &p.join(&q).unwrap()).unwrap();
                let rhs = precompose(&f, &p).unwrap().join(&precompose(&f, &q).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sequence_documents_round_trip(s in sequence()) {
        let prefix: Vec<String> = s.prefix().iter().map(|v| format!("\"{v}\"")).collect();
        let text = format!("{{\"prefix\":[{}],\"tail\":\"{}\"}}", prefix.join(","), s.tail_value());
        let doc = Document::from_json(&text).unwrap();
        let again = Document::from_json(&doc.to_json()).unwrap();
        prop_assert!(doc.same_value(&again));
    }
}
