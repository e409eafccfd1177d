use super::{AlgebraError, Degree, Monomial, Poly};

/// Total degree together with the degree in each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeData {
    pub total: Degree,
    pub per_variable: Vec<(String, Degree)>,
}

impl Poly {
    /// Formal partial derivative in variable `i`. In characteristic p the
    /// factor `e` is reduced, so `x^p` differentiates to zero.
    pub fn derivative(&self, i: usize) -> Poly {
        let field = self.ring.field();
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps.to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), &c.mul(&field.from_i64(e as i64)));
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<Poly, AlgebraError> {
        let i = self
            .ring
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable { name: name.into(), position: 0 })?;
        Ok(self.derivative(i))
    }

    pub fn degree_data(&self) -> DegreeData {
        DegreeData {
            total: self.total_degree(),
            per_variable: self.ring.vars().iter().enumerate().map(|(i, v)| (v.clone(), self.degree_in(i))).collect(),
        }
    }
}

/// Determinant of the Jacobian matrix of `(f, g)` with respect to the
/// variables `a`, `b`.
pub fn jacobian_det(f: &Poly, g: &Poly, a: &str, b: &str) -> Result<Poly, AlgebraError> {
    f.check_ring(g)?;
    let fa = f.derivative_by(a)?;
    let fb = f.derivative_by(b)?;
    let ga = g.derivative_by(a)?;
    let gb = g.derivative_by(b)?;
    Ok(fa.mul(&gb).sub(&fb.mul(&ga)))
}

#[cfg(test)]
mod tests {
    use crate::field::Field;
    use crate::poly::{jacobian_det, Poly, Ring};

    #[test]
    fn frobenius_power_has_zero_derivative() {
        let r = Ring::new(Field::prime(3).unwrap(), &["x"]).unwrap();
        let p = Poly::parse(&r, "x^3 + x^2").unwrap();
        assert_eq!(p.derivative(0).to_string(), "2*x");
    }

    #[test]
    fn jacobian_of_triangular_map() {
        let r = Ring::new(Field::Rationals, &["x", "y"]).unwrap();
        let f = Poly::parse(&r, "x").unwrap();
        let g = Poly::parse(&r, "y + x^7 - x").unwrap();
        assert!(jacobian_det(&f, &g, "x", "y").unwrap().is_one());
        let j = jacobian_det(&Poly::parse(&r, "2*x").unwrap(), &Poly::parse(&r, "y").unwrap(), "x", "y").unwrap();
        assert_eq!(j.to_string(), "2");
    }
}
