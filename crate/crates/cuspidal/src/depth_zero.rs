//! Depth-zero cuspidal functions on G = GL_2(F): a cuspidal character of
//! GL_2(F_l) inflated to Z K_0 with a central character, zero elsewhere.

use gl_group::Mat;
use haar::{InflatedGroupFunction, TestFunction};
use local_field::{Cyc, FqField};

use crate::character::CuspidalCharacterTable;
use crate::CuspidalError;

/// omega on F^x = t^Z x O^x: omega(t) = zeta_{t_order}^{t_exp}, and on a unit
/// u, omega(u) = zeta_{l-1}^{unit_exp dlog(u mod t)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralCharacter {
    pub t_order: u32,
    pub t_exp: i64,
    pub unit_exp: i64,
}

impl CentralCharacter {
    pub fn on_residue(&self, field: &FqField, a: u8) -> Result<Cyc, CuspidalError> {
        let l = field.dlog(&field.from_prime_field(a))? as i64;
        Ok(Cyc::root_of_unity(field.unit_order(), self.unit_exp * l))
    }
}

#[derive(Clone, Debug)]
pub struct DepthZeroFunction {
    pub table: CuspidalCharacterTable,
    pub omega: CentralCharacter,
    inner: InflatedGroupFunction,
}

/// f(z k) = omega(z) chi(k mod t) on Z K_0, 0 elsewhere.
pub fn depth_zero_function(table: &CuspidalCharacterTable, omega: CentralCharacter) -> Result<DepthZeroFunction, CuspidalError> {
    let q = table.q;
    let prime_field = FqField::new(q, 1)?;
    for a in 1..q {
        if omega.on_residue(&prime_field, a)? != table.central_value(a) {
            return Err(CuspidalError::IncompatibleCentralCharacter);
        }
    }
    let inner = InflatedGroupFunction::new(q, table.values().to_vec(), (omega.t_order, omega.t_exp));
    Ok(DepthZeroFunction { table: table.clone(), omega, inner })
}

/// The unit part of omega forced by the table, with the given omega(t).
pub fn compatible_central_character(table: &CuspidalCharacterTable, t_order: u32, t_exp: i64) -> Result<CentralCharacter, CuspidalError> {
    let prime_field = FqField::new(table.q, 1)?;
    for unit_exp in 0..prime_field.unit_order().max(1) as i64 {
        let omega = CentralCharacter { t_order, t_exp, unit_exp };
        let ok = (1..table.q).try_fold(true, |acc, a| Ok::<_, CuspidalError>(acc && omega.on_residue(&prime_field, a)? == table.central_value(a)))?;
        if ok {
            return Ok(omega);
        }
    }
    Err(CuspidalError::IncompatibleCentralCharacter)
}

impl DepthZeroFunction {
    pub fn inflation(&self) -> &InflatedGroupFunction {
        &self.inner
    }

    /// y in Z K_0: val det y even and t^(-val det / 2) y in K_0.
    pub fn in_support(y: &Mat) -> bool {
        let d = y.det();
        if d.is_zero() || d.val().rem_euclid(2) == 1 {
            return false;
        }
        y.min_valuation().finite() == Some(d.val() / 2)
    }
}

impl TestFunction for DepthZeroFunction {
    fn prime(&self) -> u8 {
        self.inner.prime()
    }
    fn eval(&self, y: &Mat) -> Cyc {
        self.inner.eval(y)
    }
    fn constant_on_ball(&self, center: &Mat, e: i64) -> Option<Cyc> {
        self.inner.constant_on_ball(center, e)
    }
    fn conjugation_level(&self) -> Option<i64> {
        self.inner.conjugation_level()
    }
    fn line_window(&self, base: &Mat, dir: &Mat) -> Option<i64> {
        self.inner.line_window(base, dir)
    }
    fn supported_in_zk0(&self) -> bool {
        true
    }
}
