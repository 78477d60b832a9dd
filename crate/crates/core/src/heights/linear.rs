//! Distortion class of a projective linear map from its eigenvalues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cyclotomic_part, lcm_all, RatMatrix, UPoly};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinearClass {
    FiniteOrder,
    DoublyExpDistorted,
    ExpDistorted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearClassReport {
    pub class: LinearClass,
    /// Characteristic polynomial of `B = A^n / det A`, constant term first.
    pub normalized_charpoly: Vec<String>,
    /// Orders of the cyclotomic factors of that polynomial.
    pub cyclotomic_orders: Vec<usize>,
    /// Some `k` with `A^k` scalar, when the class is `FiniteOrder`.
    pub projective_order_bound: Option<usize>,
}

/// Classifies `A ∈ GL_n(Q)` acting on P^{n-1}.
///
/// With `B = A^n / det A` (determinant one, same projective class up to the
/// power `n`), the eigenvalue ratios of `A` are roots of unity iff every
/// eigenvalue of `B` is, iff the characteristic polynomial of `B` is a
/// product of cyclotomic polynomials. In that case `A` has finite projective
/// order iff `B^L = I` for `L` the lcm of the cyclotomic orders.
pub fn distortion_class_of_linear(a: &RatMatrix) -> Result<LinearClassReport> {
    let det = a.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = a.n();
    let b = a.pow(n as i64)?.scale(&det.recip());
    let cp = b.charpoly();
    let coeffs = cp.coeffs().iter().map(|c| c.to_string()).collect();
    let report = |class, orders: Vec<usize>, order| LinearClassReport {
        class,
        normalized_charpoly: coeffs,
        cyclotomic_orders: orders,
        projective_order_bound: order,
    };
    if !cp.is_integral() {
        return Ok(report(LinearClass::ExpDistorted, vec![], None));
    }
    let (orders, rest): (Vec<usize>, UPoly) = cyclotomic_part(&cp);
    if rest.degree() > 0 {
        return Ok(report(LinearClass::ExpDistorted, orders, None));
    }
    let l = lcm_all(&orders);
    if b.pow(l as i64)?.is_identity() {
        Ok(report(LinearClass::FiniteOrder, orders, Some(n * l)))
    } else {
        Ok(report(LinearClass::DoublyExpDistorted, orders, None))
    }
}
