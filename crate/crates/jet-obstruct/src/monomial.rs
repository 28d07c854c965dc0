//! Square-free monomials in the exterior generators.
//!
//! A monomial is a subset of the generator indices, stored as a `u32`
//! bitmask.  Because every generator has odd degree, a generator squares
//! to zero and any product of distinct generators can be brought to the
//! canonical ascending-index form by counting transpositions; the sign of
//! a reordering is the parity of its inversion count.

/// Hard cap imposed by the `u32` mask; the CLI applies a lower soft limit.
pub const MAX_GENERATORS: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(u32);

impl Monomial {
    /// The empty product (the unit of the algebra).
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    /// Builds a monomial from generator indices; `None` if an index repeats.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Self> {
        let mut mask = 0u32;
        for i in indices {
            debug_assert!(i < MAX_GENERATORS);
            let bit = 1u32 << i;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Monomial(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1u32 << index) != 0
    }

    pub fn factor_count(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator indices in ascending order.
    pub fn factors(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    /// Removes one factor, with the Koszul sign of commuting it to the front.
    ///
    /// Returns `(rest, sign)` where `self = ±(generator index) ∧ rest` and the
    /// sign is `(-1)^(number of factors before index)`.
    pub fn remove_factor(self, index: usize) -> Option<(Monomial, i8)> {
        if !self.contains(index) {
            return None;
        }
        let below = self.0 & ((1u32 << index) - 1);
        let sign = if below.count_ones() % 2 == 0 { 1 } else { -1 };
        Some((Monomial(self.0 & !(1u32 << index)), sign))
    }
}

/// Concatenation sign for `a ∧ b` in canonical order.
///
/// `None` when the monomials share a factor (the product is zero).  The
/// sign is the parity of the inversion count between the two ascending
/// factor lists, which is the full Koszul sign since all generator
/// degrees are odd.
pub fn wedge_monomials(a: Monomial, b: Monomial) -> Option<(Monomial, i8)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    for j in b.factors() {
        // factors of `a` that must move past the j-th generator
        inversions += (a.0 >> (j + 1)).count_ones();
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((Monomial(a.0 | b.0), sign))
}

impl Ord for Monomial {
    /// Lexicographic order on the ascending factor lists, so e.g. with
    /// generators `A < B < C < T` the degree-two monomials sort as
    /// `AB, AC, AT, BC, BT, CT` regardless of the underlying mask values.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.factors().cmp(other.factors())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ix: &[usize]) -> Monomial {
        Monomial::from_indices(ix.iter().copied()).unwrap()
    }

    #[test]
    fn ordering_is_lexicographic_on_factor_lists() {
        // A=0, B=1, C=2, T=3
        let degree_two = [m(&[0, 1]), m(&[0, 2]), m(&[0, 3]), m(&[1, 2]), m(&[1, 3]), m(&[2, 3])];
        let mut sorted = degree_two;
        sorted.sort();
        assert_eq!(sorted, degree_two);
        // prefix comes first: A < AB, unit < everything
        assert!(Monomial::UNIT < m(&[0]));
        assert!(m(&[0]) < m(&[0, 1]));
        assert!(m(&[0, 3]) < m(&[1, 2]));
    }

    #[test]
    fn wedge_signs_count_inversions() {
        // B ∧ AC = -ABC (one inversion: B past A)
        assert_eq!(wedge_monomials(m(&[1]), m(&[0, 2])), Some((m(&[0, 1, 2]), -1)));
        // C ∧ AB = +ABC (two inversions)
        assert_eq!(wedge_monomials(m(&[2]), m(&[0, 1])), Some((m(&[0, 1, 2]), 1)));
        // A ∧ A = 0
        assert_eq!(wedge_monomials(m(&[0]), m(&[0])), None);
        // unit is neutral
        assert_eq!(wedge_monomials(Monomial::UNIT, m(&[1, 3])), Some((m(&[1, 3]), 1)));
    }

    #[test]
    fn remove_factor_tracks_position_parity() {
        let abc = m(&[0, 1, 2]);
        assert_eq!(abc.remove_factor(0), Some((m(&[1, 2]), 1)));
        assert_eq!(abc.remove_factor(1), Some((m(&[0, 2]), -1)));
        assert_eq!(abc.remove_factor(2), Some((m(&[0, 1]), 1)));
        assert_eq!(abc.remove_factor(3), None);
    }
}
