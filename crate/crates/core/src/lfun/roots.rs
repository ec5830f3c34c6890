//! Complex roots with multiplicities of exact polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, QuadElem, QuadField, Rationals, UniPoly};
use crate::numeric::fixed::{Complex, Fixed};
use crate::numeric::roots::polynomial_roots;
use crate::numeric::NumericError;

/// Roots of `p` to `bits` bits, each listed once per multiplicity.
pub fn roots_with_multiplicity<R, F>(
    r: &R,
    p: &UniPoly<R::Elem>,
    to_fixed: F,
    bits: u32,
) -> Result<Vec<Complex>, NumericError>
where
    R: Field,
    F: Fn(&R::Elem, u32) -> Fixed,
{
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_char0(r) {
        let work = bits + 16;
        let c: Vec<Fixed> = part.coeffs().iter().map(|x| to_fixed(x, work)).collect();
        let rs = polynomial_roots(&c, work)?;
        for z in rs.roots {
            for _ in 0..mult {
                out.push(z.with_bits(bits));
            }
        }
    }
    Ok(out)
}

pub fn integer_poly_roots(coeffs: &[BigInt], bits: u32) -> Result<Vec<Complex>, NumericError> {
    let p = UniPoly::new(
        &Rationals,
        coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
    );
    roots_with_multiplicity(&Rationals, &p, |x, b| Fixed::from_rational(x, b), bits)
}

/// `a + b√d` as a fixed-point number.
pub fn quad_to_fixed(field: &QuadField, x: &QuadElem, bits: u32) -> Fixed {
    let s = Fixed::sqrt_int(field.radicand(), bits);
    Fixed::from_rational(&x.a, bits).add(&Fixed::from_rational(&x.b, bits).mul(&s))
}

pub fn quad_poly_roots(field: &QuadField, p: &UniPoly<QuadElem>, bits: u32) -> Result<Vec<Complex>, NumericError> {
    roots_with_multiplicity(field, p, |x, b| quad_to_fixed(field, x, b), bits)
}
