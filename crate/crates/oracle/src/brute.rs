use superriccati::grassmann::{Blade, Coefficient, GrassmannElement};

/// Sorts a generator word into ascending order by adjacent swaps. Returns
/// `None` if a generator repeats, otherwise the sorted word and whether the
/// number of swaps is odd.
pub fn canonicalize(word: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut w = word.to_vec();
    let mut swaps = 0usize;
    for pass in 0..w.len() {
        for i in 0..w.len().saturating_sub(pass + 1) {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                swaps += 1;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, swaps % 2 == 1))
}

/// Grassmann product computed word by word: concatenate the generator
/// lists of every term pair and bubble-sort them into canonical order.
pub fn brute_mul<T: Coefficient>(a: &GrassmannElement<T>, b: &GrassmannElement<T>) -> GrassmannElement<T> {
    assert_eq!(
        a.generators(),
        b.generators(),
        "operands need the same generator count"
    );
    let mut terms = Vec::new();
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let word: Vec<u8> = ba.generators().chain(bb.generators()).collect();
            if let Some((sorted, odd)) = canonicalize(&word) {
                let blade = Blade::from_generators(&sorted).expect("sorted word without repeats");
                let value = ca.clone() * cb.clone();
                terms.push((blade, if odd { -value } else { value }));
            }
        }
    }
    GrassmannElement::from_terms(a.generators(), terms).expect("blades stay in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use superriccati::grassmann::{Generators, BETA, BETA_BAR, ETA, ETA_BAR};

    fn gen(i: u8) -> GrassmannElement {
        GrassmannElement::generator(Generators::SUPER, i).unwrap()
    }

    #[test]
    fn swapped_pair_is_negative() {
        let p = brute_mul(&gen(ETA_BAR), &gen(ETA));
        assert_eq!(p.coeff(Blade::from_bits(0b11)), Complex64::new(-1.0, 0.0));
        assert!(brute_mul(&gen(ETA), &gen(ETA)).is_zero());
    }

    #[test]
    fn disjoint_even_blades_commute() {
        let ee = brute_mul(&gen(ETA), &gen(ETA_BAR));
        let bb = brute_mul(&gen(BETA_BAR), &gen(BETA));
        let p = brute_mul(&ee, &bb);
        let q = brute_mul(&bb, &ee);
        assert_eq!(p, q);
        // eta etabar betabar beta = -blade(0b1111)
        assert_eq!(p.coeff(Blade::from_bits(0b1111)), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn canonical_words() {
        assert_eq!(canonicalize(&[3, 2, 1, 0]), Some((vec![0, 1, 2, 3], false)));
        assert_eq!(canonicalize(&[1, 0, 2]), Some((vec![0, 1, 2], true)));
        assert_eq!(canonicalize(&[2, 0, 2]), None);
    }
}
