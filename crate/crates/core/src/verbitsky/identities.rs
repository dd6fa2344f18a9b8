use super::eta::eta_operator;
use crate::cdga::{
    check_leibniz, compose, first_difference, is_zero_operator, supercommutator_matrices, Derivation, GradedOperator,
};
use crate::contact::LieModel;
use crate::error::Result;
use crate::exterior::Element;
use crate::scalar::Scalar;

/// The operator identities checked as matrix equalities in every degree.
/// Each field names the first basis vector `X_a` (1-based) or operator on
/// which the identity failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub d_squared: bool,
    /// `{d, ι_X}` agrees with the coadjoint action `e^k ↦ −e^k([X, ·])`
    /// extended as a derivation.
    pub cartan: Option<usize>,
    pub iota_squared: Option<usize>,
    /// `{d, d_η} = 0`; `None` in the report when `η` is absent.
    pub d_d_eta: Option<bool>,
    /// Operators whose matrices violate the graded Leibniz rule.
    pub leibniz_failures: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.d_squared
            && self.cartan.is_none()
            && self.iota_squared.is_none()
            && self.d_d_eta != Some(false)
            && self.leibniz_failures.is_empty()
    }
}

/// `L_X` on `e^k` is `−Σ_j c^k_{Xj} e^j`, independent of `d` and `ι_X`.
fn coadjoint<F: Scalar>(m: &LieModel<F>, a: usize) -> Result<Derivation<F>> {
    let alg = m.algebra();
    let n = m.dim();
    let images = (0..n)
        .map(|k| {
            let v: Vec<F> = (0..n).map(|j| -m.structure_constant(a, j, k).clone()).collect();
            (k, Element::from_vector(alg, 1, &v))
        })
        .collect();
    Derivation::extend(alg, 0, images)
}

pub fn operator_identities<F: Scalar>(m: &LieModel<F>) -> Result<IdentityReport> {
    let d = m.dga().d();
    let mut report = IdentityReport { d_squared: m.dga().d_squared_vanishes(), ..Default::default() };
    let mut leibniz = |name: String, op: &dyn GradedOperator<F>| {
        if let Err(f) = check_leibniz(op) {
            report.leibniz_failures.push(format!("{name} on ({}, {})", f.left, f.right));
        }
    };
    leibniz("d".into(), d);
    let mut cartan = None;
    let mut iota_squared = None;
    for a in 0..m.dim() {
        let x = m.basis_vector(a);
        let iota = m.contraction(&x);
        let lie = supercommutator_matrices(d, &iota)?;
        leibniz(format!("ι_X{}", a + 1), &iota);
        leibniz(format!("L_X{}", a + 1), &lie);
        if cartan.is_none() && first_difference(&lie, &coadjoint(m, a)?).is_some() {
            cartan = Some(a + 1);
        }
        if iota_squared.is_none() && !is_zero_operator(&compose(&iota, &iota)?) {
            iota_squared = Some(a + 1);
        }
    }
    let d_d_eta = match m.eta() {
        Some(_) => {
            let op = eta_operator(m)?;
            let d_eta = supercommutator_matrices(d, op.rho())?;
            leibniz("d_η".into(), &d_eta);
            Some(is_zero_operator(&supercommutator_matrices(d, &d_eta)?))
        }
        None => None,
    };
    Ok(IdentityReport { cartan, iota_squared, d_d_eta, ..report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = Rational64;

    #[test]
    fn heisenberg_identities() {
        let q = Q::from_integer;
        let m = LieModel::<Q>::new(3, &[(0, 1, 2, q(1))]).unwrap().with_eta(vec![q(1), q(0), q(0)]).unwrap();
        let r = operator_identities(&m).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.d_d_eta, Some(true));
    }

    #[test]
    fn coadjoint_matches_hand_computation() {
        let q = Q::from_integer;
        let m = LieModel::<Q>::new(3, &[(0, 1, 2, q(1))]).unwrap();
        // (L_{X1} e³)(X2) = −e³([X1, X2]) = −1.
        let l = coadjoint(&m, 0).unwrap();
        let e3 = Element::named(m.algebra(), "e3").unwrap();
        assert_eq!(l.apply(&e3).unwrap(), Element::parse(m.algebra(), "-e2").unwrap());
    }
}
