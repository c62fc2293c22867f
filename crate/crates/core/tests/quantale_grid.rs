use poscomp::quantale::{luk_tensor, oplus, pitchfork, trunc_minus};
use poscomp::Rat01;

fn grid() -> Vec<Rat01> {
    Rat01::grid(16)
}

#[test]
fn adjunction_holds_on_every_grid_triple() {
    let g = grid();
    for x in &g {
        for u in &g {
            for y in &g {
                assert_eq!(
                    luk_tensor(x, u) <= *y,
                    *x <= pitchfork(y, u),
                    "x={x} u={u} y={y}"
                );
            }
        }
    }
}

#[test]
fn truncated_minus_is_pitchfork_into_zero() {
    let g = grid();
    let zero = Rat01::zero();
    for u in &g {
        for v in &g {
            assert_eq!(trunc_minus(v, u), pitchfork(&zero, &pitchfork(u, v)));
        }
    }
}

#[test]
fn tensor_is_a_commutative_monoid_with_unit_one() {
    let g = grid();
    let one = Rat01::one();
    for a in &g {
        assert_eq!(luk_tensor(a, &one), *a);
        for b in &g {
            assert_eq!(luk_tensor(a, b), luk_tensor(b, a));
            for c in &g {
                assert_eq!(
                    luk_tensor(a, &luk_tensor(b, c)),
                    luk_tensor(&luk_tensor(a, b), c)
                );
            }
        }
    }
}

#[test]
fn oplus_saturates_at_one() {
    let half = Rat01::new(1, 2).unwrap();
    let three_quarters = Rat01::new(3, 4).unwrap();
    assert_eq!(oplus(&half, &three_quarters), Rat01::one());
    assert_eq!(oplus(&Rat01::new(1, 4).unwrap(), &half), three_quarters);
}

#[test]
fn construction_rejects_values_outside_the_unit_interval() {
    assert!(Rat01::new(3, 2).is_err());
    assert!(Rat01::new(-1, 2).is_err());
    assert_eq!(Rat01::new(2, 4).unwrap(), Rat01::new(1, 2).unwrap());
}
