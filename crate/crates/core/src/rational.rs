//! Exact rationals used for reporting influence and spectral sums.

use num_rational::Ratio;

pub type Rational = Ratio<i128>;

/// `num / 2^shift`, reduced.
pub fn dyadic(num: i128, shift: usize) -> Rational {
    Rational::new(num, 1i128 << shift)
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_text(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) mod serde_text {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_reduced() {
        assert_eq!(to_text(&dyadic(12, 3)), "3/2");
        assert_eq!(to_text(&dyadic(24, 3)), "3");
        assert_eq!(to_text(&dyadic(0, 5)), "0");
    }
}
