use poscomp::enumerate::{labeled_posets_up_to, monotone_maps, poset_classes_up_to};
use poscomp::vietoris::{
    classify, kleisli_compose, mult, unit, vietoris_map, vietoris_object, Coalgebra,
};
use poscomp::{FinPoset, MonoMap};

fn id(x: &FinPoset) -> MonoMap {
    MonoMap::identity(x)
}

#[test]
fn functor_preserves_identities() {
    for x in labeled_posets_up_to(3) {
        let vid = vietoris_map(&id(&x));
        assert_eq!(vid.table(), id(vid.domain()).table());
    }
}

#[test]
fn functor_preserves_composition() {
    let classes = poset_classes_up_to(2);
    for x in &classes {
        for y in &classes {
            for z in &classes {
                for f in monotone_maps(x, y) {
                    for g in monotone_maps(y, z) {
                        let lhs = vietoris_map(&g.after(&f).unwrap());
                        let rhs = vietoris_map(&g).after(&vietoris_map(&f)).unwrap();
                        assert_eq!(lhs.table(), rhs.table());
                    }
                }
            }
        }
    }
}

#[test]
fn monad_unit_and_associativity_laws() {
    for x in labeled_posets_up_to(2) {
        let vx = vietoris_object(&x);
        let m = mult(&x);
        let e_vx = unit(vx.poset());
        let ve = vietoris_map(&unit(&x));
        assert_eq!(m.after(&e_vx).unwrap().table(), id(vx.poset()).table());
        assert_eq!(m.after(&ve).unwrap().table(), id(vx.poset()).table());
        let m_vx = mult(vx.poset());
        let vm = vietoris_map(&m);
        assert_eq!(
            m.after(&m_vx).unwrap().table(),
            m.after(&vm).unwrap().table()
        );
    }
}

#[test]
fn unit_and_empty_coalgebras_classify_as_expected() {
    for x in labeled_posets_up_to(3) {
        let u = classify(&Coalgebra::unit(&x));
        assert!(u.relational_reflexive && u.relational_transitive);
        let e = classify(&Coalgebra::empty(&x));
        assert!(e.relational_transitive);
        assert_eq!(e.relational_reflexive, x.is_empty());
    }
}

#[test]
fn kleisli_unit_is_neutral() {
    let x = FinPoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    let c = Coalgebra::from_generators(&x, &[vec![1, 2], vec![], vec![2]]).unwrap();
    let one = Coalgebra::unit(&x);
    assert_eq!(kleisli_compose(&c, &one).unwrap().alpha(), c.alpha());
    assert_eq!(kleisli_compose(&one, &c).unwrap().alpha(), c.alpha());
}
