use serde::Serialize;

use super::geometry::{
    format_covector, is_killing, killing_check, levi_civita, normality_check, parallel_check, Check, Tensor, Witness,
};
use super::model::{dot, LieModel};
use crate::error::{Error, Result};
use crate::exterior::Element;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Checks `J² = −I + ξ⊗η`, `η(ξ) = 1` and `g(JX, JY) = g(X, Y) − η(X)η(Y)` as
/// exact matrix identities.
pub fn validate_almost_contact<F: Scalar>(m: &LieModel<F>) -> Result<Check> {
    let j = m.require_j()?;
    let xi = m.require_xi()?;
    let eta = m.require_eta()?;
    let n = m.dim();
    let xi_eta = Matrix::from_fn(n, n, |r, c| xi[r].clone() * eta[c].clone());

    let residual = j.mul(j).add(&Matrix::identity(n)).sub(&xi_eta);
    if let Some((r, c)) = first_nonzero(&residual) {
        return Ok(Err(Witness::new(
            "J² + I − ξ⊗η",
            format!("entry ({}, {})", r + 1, c + 1),
            residual[(r, c)].to_string(),
        )));
    }
    let pairing = dot(eta, xi);
    if !pairing.is_one() {
        return Ok(Err(Witness::new("η(ξ) = 1", "η(ξ)", pairing.to_string())));
    }
    let eta_eta = Matrix::from_fn(n, n, |r, c| eta[r].clone() * eta[c].clone());
    let residual = j.transpose().mul(m.metric()).mul(j).sub(&m.metric().sub(&eta_eta));
    if let Some((r, c)) = first_nonzero(&residual) {
        return Ok(Err(Witness::new(
            "g(JX, JY) − g(X, Y) + η(X)η(Y)",
            format!("(X{}, X{})", r + 1, c + 1),
            residual[(r, c)].to_string(),
        )));
    }
    Ok(Ok(()))
}

fn first_nonzero<F: Scalar>(a: &Matrix<F>) -> Option<(usize, usize)> {
    (0..a.rows()).flat_map(|r| (0..a.cols()).map(move |c| (r, c))).find(|&(r, c)| !a[(r, c)].is_zero())
}

/// `ω(X, Y) = g(JX, Y)` as a 2-form; refused unless the structure is almost
/// contact. `ι_ξ ω = 0` is verified.
pub fn fundamental_form<F: Scalar>(m: &LieModel<F>) -> Result<Element<F>> {
    if let Err(w) = validate_almost_contact(m)? {
        return Err(Error::Refused(format!("not an almost-contact metric structure ({w})")));
    }
    let j = m.require_j()?;
    let matrix = j.transpose().mul(m.metric());
    let omega = m.two_form(&matrix);
    let contracted = m.contract(m.require_xi()?, &omega)?;
    if !contracted.is_zero() {
        return Err(Error::InvalidModel(format!("ι_ξ ω = {contracted} ≠ 0")));
    }
    Ok(omega)
}

/// The fundamental form used by the other checks: the override when given,
/// otherwise `g(J·, ·)`.
pub fn working_omega<F: Scalar>(m: &LieModel<F>) -> Result<Element<F>> {
    match m.omega_override() {
        Some(w) => Ok(w.clone()),
        None => fundamental_form(m),
    }
}

/// Differential of `η` in the Chevalley–Eilenberg complex.
pub fn d_eta<F: Scalar>(m: &LieModel<F>) -> Result<Element<F>> {
    m.dga().differential(&m.one_form(m.require_eta()?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub almost_contact: bool,
    pub cosymplectic: bool,
    pub normal: bool,
    pub co_kahler: bool,
    pub killing_xi: bool,
    pub parallel_xi: bool,
    pub parallel_eta: bool,
    pub parallel_j: bool,
    /// Whether a supplied ω agrees with `g(J·, ·)`; absent without override.
    pub omega_matches: Option<bool>,
    #[serde(serialize_with = "witness_strings")]
    pub witnesses: Vec<Witness>,
}

fn witness_strings<S: serde::Serializer>(ws: &[Witness], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(ToString::to_string))
}

impl StructureVerdict {
    /// `co-Kähler ⟺ cosymplectic ∧ normal ⟺ ∇J = 0`, asserted on almost-contact
    /// structures.
    pub fn equivalence_holds(&self) -> bool {
        !self.almost_contact
            || (self.co_kahler == (self.cosymplectic && self.normal) && self.co_kahler == self.parallel_j)
    }

    /// On co-Kähler structures `ξ` is Killing and parallel and `η` is
    /// parallel.
    pub fn consequences_hold(&self) -> bool {
        !self.co_kahler || (self.killing_xi && self.parallel_xi && self.parallel_eta)
    }

    pub fn witness(&self, check: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.check == check)
    }
}

/// Fills every verdict field from independent checks.
pub fn classify<F: Scalar>(m: &LieModel<F>) -> Result<StructureVerdict> {
    let j = m.require_j()?;
    let xi = m.require_xi()?;
    let eta = m.require_eta()?;
    let mut witnesses = Vec::new();
    let mut record = |c: Check| match c {
        Ok(()) => true,
        Err(w) => {
            witnesses.push(w);
            false
        }
    };

    let almost_contact = record(validate_almost_contact(m)?);
    let conn = levi_civita(m)?;
    let killing_xi = record(killing_check(m, xi));
    let parallel_xi = record(parallel_check(m, &conn, Tensor::Vector(xi)));
    let parallel_eta = record(parallel_check(m, &conn, Tensor::Covector(eta)));
    let parallel_j = record(parallel_check(m, &conn, Tensor::Endomorphism(j)));

    let (cosymplectic, normal, omega_matches) = if almost_contact {
        let computed = fundamental_form(m)?;
        let omega_matches = m.omega_override().map(|w| *w == computed);
        let omega = working_omega(m)?;
        let d_omega = m.dga().differential(&omega)?;
        let de = d_eta(m)?;
        let closed_omega =
            record(if d_omega.is_zero() { Ok(()) } else { Err(Witness::new("dω", "dω", d_omega.to_string())) });
        let closed_eta = record(if de.is_zero() {
            Ok(())
        } else {
            Err(Witness::new("dη", format!("η = {}", format_covector(eta)), de.to_string()))
        });
        let normal = record(normality_check(m)?);
        (closed_omega && closed_eta, normal, omega_matches)
    } else {
        (false, false, None)
    };

    debug_assert_eq!(killing_xi, is_killing(m, xi));
    Ok(StructureVerdict {
        almost_contact,
        cosymplectic,
        normal,
        co_kahler: cosymplectic && normal,
        killing_xi,
        parallel_xi,
        parallel_eta,
        parallel_j,
        omega_matches,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    type Q = Rational64;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn standard_j(dim: usize) -> Matrix<Q> {
        let mut j = Matrix::zeros(dim, dim);
        for b in (1..dim).step_by(2) {
            j[(b + 1, b)] = q(1);
            j[(b, b + 1)] = q(-1);
        }
        j
    }

    fn e(dim: usize, i: usize) -> Vec<Q> {
        (0..dim).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    fn standard(m: LieModel<Q>) -> LieModel<Q> {
        let d = m.dim();
        m.with_structure(standard_j(d), e(d, 0), e(d, 0)).unwrap()
    }

    fn heisenberg() -> LieModel<Q> {
        standard(LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap())
    }

    #[test]
    fn almost_contact_examples() {
        assert_eq!(validate_almost_contact(&standard(LieModel::abelian(3).unwrap())).unwrap(), Ok(()));
        assert_eq!(validate_almost_contact(&heisenberg()).unwrap(), Ok(()));
        let mut j = Matrix::zeros(3, 3);
        j[(1, 1)] = q(1);
        let bad = LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap().with_structure(j, e(3, 0), e(3, 0)).unwrap();
        let w = validate_almost_contact(&bad).unwrap().unwrap_err();
        assert_eq!(w.check, "J² + I − ξ⊗η");
        assert!(matches!(validate_almost_contact(&LieModel::<Q>::abelian(3).unwrap()), Err(Error::MissingTensor(_))));
    }

    #[test]
    fn fundamental_forms() {
        let t3 = standard(LieModel::abelian(3).unwrap());
        let w = fundamental_form(&t3).unwrap();
        assert_eq!(w, Element::parse(t3.algebra(), "e2*e3").unwrap());
        // Oracle: entrywise g(JX_i, X_j).
        let j = t3.j().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t3.evaluate_two_form(&w, a, b), t3.inner(&j.column(a), &t3.basis_vector(b)));
            }
        }
        let t5 = standard(LieModel::abelian(5).unwrap());
        assert_eq!(fundamental_form(&t5).unwrap(), Element::parse(t5.algebra(), "e2*e3 + e4*e5").unwrap());
        let broken = LieModel::<Q>::abelian(3).unwrap().with_structure(Matrix::zeros(3, 3), e(3, 0), e(3, 0)).unwrap();
        assert!(matches!(fundamental_form(&broken), Err(Error::Refused(_))));
    }

    #[test]
    fn tori_are_co_kahler() {
        for d in [3, 5] {
            let v = classify(&standard(LieModel::abelian(d).unwrap())).unwrap();
            assert!(v.almost_contact && v.cosymplectic && v.normal && v.co_kahler);
            assert!(v.killing_xi && v.parallel_xi && v.parallel_eta && v.parallel_j);
            assert!(v.equivalence_holds() && v.consequences_hold());
            assert!(v.witnesses.is_empty());
        }
    }

    #[test]
    fn heisenberg_is_cosymplectic_not_normal() {
        let v = classify(&heisenberg()).unwrap();
        assert!(v.almost_contact && v.cosymplectic);
        assert!(!v.normal && !v.co_kahler && !v.parallel_j);
        assert!(!v.killing_xi && !v.parallel_xi);
        assert!(v.equivalence_holds());
        assert_eq!(v.witness("L_ξ g").unwrap().slot, "(X2, X3)");
        assert_eq!(v.witness("L_ξ g").unwrap().value, "-1");
    }

    #[test]
    fn heisenberg_with_eta_e3_is_not_cosymplectic() {
        // ξ = X3, η = e3, J X1 = X2, J X2 = −X1.
        let mut j = Matrix::zeros(3, 3);
        j[(1, 0)] = q(1);
        j[(0, 1)] = q(-1);
        let m = LieModel::new(3, &[(0, 1, 2, q(1))]).unwrap().with_structure(j, e(3, 2), e(3, 2)).unwrap();
        let v = classify(&m).unwrap();
        assert!(v.almost_contact && !v.cosymplectic && !v.co_kahler);
        assert_eq!(v.witness("dη").unwrap().value, "-e1*e2");
        assert!(v.normal);
        assert!(v.equivalence_holds());
    }

    #[test]
    fn omega_override_cross_check() {
        let t3 = standard(LieModel::abelian(3).unwrap());
        let good = Element::parse(t3.algebra(), "e2*e3").unwrap();
        let bad = Element::parse(t3.algebra(), "2 e2*e3").unwrap();
        assert_eq!(classify(&t3.clone().with_omega(good).unwrap()).unwrap().omega_matches, Some(true));
        assert_eq!(classify(&t3.with_omega(bad).unwrap()).unwrap().omega_matches, Some(false));
    }
}
