use proptest::prelude::*;
use shuffle_square::alphabet::{sigma, Alphabet};
use shuffle_square::encoding::Encoding;
use shuffle_square::shuffle::{is_shuffle, shuffle_witness};
use shuffle_square::square::{is_square, SquareOptions};
use shuffle_square::{Decision, Matching, Side, Sym, Word};

fn sigma_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..sigma::TOKENS.len() as u8, 0..60)
        .prop_map(|v| Word::new(Alphabet::reduction(), v.into_iter().map(Sym).collect()).unwrap())
}

/// A shuffle of `u` with itself together with the labels that built it.
fn square_with_labels() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
    prop::collection::vec(0u8..3, 0..8)
        .prop_flat_map(|u| {
            let n = u.len();
            (Just(u), prop::collection::vec(any::<bool>(), 2 * n))
        })
        .prop_map(|(u, coin)| {
            let (mut i, mut j) = (0, 0);
            let mut w = Vec::new();
            for c in coin {
                if (c && i < u.len()) || j == u.len() {
                    w.push(u[i]);
                    i += 1;
                } else {
                    w.push(u[j]);
                    j += 1;
                }
            }
            (u, w)
        })
}

proptest! {
    #[test]
    fn encodings_round_trip(w in sigma_word()) {
        for enc in [Encoding::Compact, Encoding::Tokens] {
            let text = enc.encode(&w).unwrap();
            prop_assert_eq!(&enc.decode_with(w.alphabet(), &text).unwrap(), &w);
        }
    }

    #[test]
    fn built_shuffles_are_recognised((u, w) in square_with_labels()) {
        prop_assert!(is_shuffle(&u, &u, &w));
        let wit = shuffle_witness(&u, &u, &w).unwrap();
        prop_assert_eq!(wit.project(&w, Side::First), u.clone());
        prop_assert_eq!(wit.project(&w, Side::Second), u);
    }

    #[test]
    fn built_squares_are_squares((u, w) in square_with_labels()) {
        let v = is_square(&w, SquareOptions::default()).unwrap();
        prop_assert_eq!(v.decision, Decision::Yes);
        let (half, m) = v.witness.unwrap();
        prop_assert_eq!(half.len(), u.len());
        prop_assert_eq!(m.validate(&w), Ok(()));
    }

    #[test]
    fn validation_ignores_pair_order((_, w) in square_with_labels(), seed in any::<u64>()) {
        if let Some((_, m)) = is_square(&w, SquareOptions::default()).unwrap().witness {
            let mut pairs = m.pairs().to_vec();
            let k = pairs.len().max(1);
            pairs.rotate_left((seed as usize) % k);
            let flipped = Matching::new(pairs.into_iter().map(|(a, b)| (b, a))).unwrap();
            prop_assert_eq!(flipped.validate(&w), m.validate(&w));
        }
    }
}
