//! Randomized properties checked against independent evaluations.

use num::BigRational;
use proptest::prelude::*;
use qfodc::fralgebra::{AlgebraElement, GroupSpec, Letter};
use qfodc::numeric::DenseModel;
use qfodc::scalar::{Coeff, Scalar};
use qfodc::ufunctionals::{FunctionalElement, GroupLike, PairingEngine, Sign};

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, k)| &acc + &Scalar::q_pow(k).scale(&Coeff::from_integer(c.into())))
    })
}

fn q0() -> BigRational {
    BigRational::new(7.into(), 10.into())
}

proptest! {
    #[test]
    fn specialization_is_a_ring_map(a in scalar(), b in scalar()) {
        let q = q0();
        let sa = a.specialize(&q).unwrap();
        let sb = b.specialize(&q).unwrap();
        prop_assert_eq!((&a * &b).specialize(&q).unwrap(), &sa * &sb);
        prop_assert_eq!((&a + &b).specialize(&q).unwrap(), &sa + &sb);
    }

    #[test]
    fn scalar_display_round_trips(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn characters_are_multiplicative(
        plus in prop::collection::vec(-2i32..=2, 3),
        minus in prop::collection::vec(-2i32..=2, 3),
        word in prop::collection::vec((0usize..3, 0usize..3), 0..4),
    ) {
        let g = GroupSpec::gl(3);
        let e = PairingEngine::new(&g).unwrap();
        let model = DenseModel::new(&g, &q0()).unwrap();
        let y = GroupLike { plus, minus, signs: Vec::new() };
        let f = FunctionalElement::group(y);
        let letters: Vec<Letter> = word.iter().map(|&(i, j)| Letter::u(i, j)).collect();
        let whole = e.eval_word(&f, &letters).unwrap();
        let mut prod = qfodc::ScalarFraction::one();
        for l in &letters {
            prod = &prod * &e.eval_word(&f, &[*l]).unwrap();
        }
        prop_assert_eq!(&whole, &prod);
        let num = model.eval(&f, &AlgebraElement::word(&letters)).unwrap();
        prop_assert_eq!(whole.specialize(&q0()).unwrap(), num);
    }

    #[test]
    fn diagonal_powers_parse(k in 0usize..3, e in -3i32..=3, plus in any::<bool>()) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let text = format!("l{}[{},{}]^{e}", if plus { '+' } else { '-' }, k + 1, k + 1);
        prop_assert_eq!(GroupLike::parse_with_n(&text, 3).unwrap(), GroupLike::diag(3, sign, k, e));
    }
}
