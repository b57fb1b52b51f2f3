//! Floating-point scalar abstraction used by the model and the chain.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the likelihood code is generic over. Implemented for `f32`
/// and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn of_count(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize fits in float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 converts to float")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Overflow-safe `ln(Σ exp(x_i))`. Returns negative infinity for an empty
/// slice or when every term is negative infinity.
pub fn log_sum_exp<T: Scalar>(terms: &[T]) -> T {
    let max = terms.iter().copied().fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() {
        return T::neg_infinity();
    }
    let sum = terms.iter().fold(T::zero(), |acc, &x| acc + (x - max).exp());
    max + sum.ln()
}

/// `log_sum_exp` over `(multiplicity, log weight)` pairs, i.e.
/// `ln(Σ c_i exp(x_i))`.
pub fn log_sum_exp_weighted<T: Scalar>(terms: &[(u64, T)]) -> T {
    let max = terms
        .iter()
        .filter(|(c, _)| *c > 0)
        .map(|&(_, x)| x)
        .fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() {
        return T::neg_infinity();
    }
    let sum = terms.iter().fold(T::zero(), |acc, &(c, x)| {
        let c = <T as FromPrimitive>::from_u64(c).expect("count fits in float");
        acc + c * (x - max).exp()
    });
    max + sum.ln()
}
