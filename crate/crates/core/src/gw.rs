//! Formal Grothendieck–Witt classes, their invariants, and trace maps.
//!
//! A class is Σ⟨a_i⟩ + h·ℍ kept as a multiset; reductions to invariants
//! happen only on request.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Extension, Field, LaurentView, SquareClassKind};
use crate::linalg::diagonalize_symmetric;

#[derive(Debug, Clone, PartialEq)]
pub struct GWClass<F: Field> {
    field: F,
    generators: Vec<F::Elem>,
    hyperbolic: i64,
    subtraction_used: bool,
}

impl<F: Field> GWClass<F> {
    pub fn zero(field: &F) -> Self {
        GWClass {
            field: field.clone(),
            generators: Vec::new(),
            hyperbolic: 0,
            subtraction_used: false,
        }
    }

    /// n·ℍ.
    pub fn hyperbolic(field: &F, n: i64) -> Self {
        GWClass {
            hyperbolic: n,
            subtraction_used: n < 0,
            ..Self::zero(field)
        }
    }

    /// ⟨a⟩.
    pub fn diag1(field: &F, a: F::Elem) -> Result<Self> {
        Self::diag(field, vec![a])
    }

    /// ⟨a_1⟩ + … + ⟨a_n⟩.
    pub fn diag(field: &F, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.iter().any(|a| field.is_zero(a)) {
            return Err(Error::ZeroSquareClass);
        }
        Ok(GWClass {
            generators: entries,
            ..Self::zero(field)
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[F::Elem] {
        &self.generators
    }

    pub fn hyperbolic_count(&self) -> i64 {
        self.hyperbolic
    }

    pub fn subtraction_used(&self) -> bool {
        self.subtraction_used
    }

    pub fn rank(&self) -> i64 {
        self.generators.len() as i64 + 2 * self.hyperbolic
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(GWClass {
            field: self.field.clone(),
            generators,
            hyperbolic: self.hyperbolic + other.hyperbolic,
            subtraction_used: self.subtraction_used || other.subtraction_used,
        })
    }

    /// Uses −⟨a⟩ = ⟨−a⟩ − ℍ.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = &self.field;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().map(|a| f.neg(a)));
        Ok(GWClass {
            field: f.clone(),
            generators,
            hyperbolic: self.hyperbolic - other.hyperbolic - other.generators.len() as i64,
            subtraction_used: true,
        })
    }

    /// ⟨c⟩·u; ℍ is absorbing.
    pub fn scale(&self, c: &F::Elem) -> Result<Self> {
        let f = &self.field;
        if f.is_zero(c) {
            return Err(Error::ZeroScale);
        }
        Ok(GWClass {
            generators: self.generators.iter().map(|a| f.mul(a, c)).collect(),
            ..self.clone()
        })
    }

    /// k·u for k ≥ 0.
    pub fn times(&self, k: usize) -> Self {
        let mut generators = Vec::with_capacity(self.generators.len() * k);
        for _ in 0..k {
            generators.extend(self.generators.iter().cloned());
        }
        GWClass {
            generators,
            hyperbolic: self.hyperbolic * k as i64,
            ..self.clone()
        }
    }

    pub fn invariants(&self) -> Result<GWInvariants> {
        gw_invariants(self)
    }

    /// Equality of invariants; errors where no canonical reduction exists.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.check_field(other)?;
        Ok(self.invariants()? == other.invariants()?)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.hyperbolic != 0 {
            parts.push(format!("{}·H", self.hyperbolic));
        }
        for a in &self.generators {
            parts.push(format!("<{}>", self.field.fmt_elem(a)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<F: Field> Serialize for GWClass<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GWClass", 3)?;
        st.serialize_field("field", &self.field.describe())?;
        let gens: Vec<String> = self.generators.iter().map(|a| self.field.fmt_elem(a)).collect();
        st.serialize_field("generators", &gens)?;
        st.serialize_field("hyperbolic", &self.hyperbolic)?;
        st.end()
    }
}

/// Field-kind specific reduction of a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantDetail {
    Signature { signature: i64 },
    DiscIsSquare { disc_is_square: bool },
    DiscParity { disc_parity: u8 },
    Raw { generators: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GWInvariants {
    pub rank: i64,
    pub detail: InvariantDetail,
}

pub fn gw_invariants<F: Field>(u: &GWClass<F>) -> Result<GWInvariants> {
    let f = &u.field;
    let rank = u.rank();
    let detail = match f.square_class_kind() {
        SquareClassKind::Real => {
            let mut sig = 0i64;
            for a in &u.generators {
                sig += f
                    .sign(a)
                    .ok_or_else(|| Error::UnsupportedField(f.describe()))? as i64;
            }
            InvariantDetail::Signature { signature: sig }
        }
        SquareClassKind::Finite => {
            let mut d = f.one();
            for a in &u.generators {
                d = f.mul(&d, a);
            }
            if u.hyperbolic.rem_euclid(2) == 1 {
                d = f.neg(&d);
            }
            InvariantDetail::DiscIsSquare {
                disc_is_square: f.is_square(&d)?,
            }
        }
        SquareClassKind::Laurent => {
            let mut v = 0i64;
            for a in &u.generators {
                v += f
                    .valuation(a)
                    .ok_or_else(|| Error::UnsupportedField(f.describe()))?;
            }
            InvariantDetail::DiscParity {
                disc_parity: v.rem_euclid(2) as u8,
            }
        }
        SquareClassKind::Opaque => return Err(Error::NoCanonicalReduction(f.describe())),
    };
    Ok(GWInvariants { rank, detail })
}

/// Raw form for fields without canonical reduction.
pub fn raw_invariants<F: Field>(u: &GWClass<F>) -> GWInvariants {
    GWInvariants {
        rank: u.rank(),
        detail: InvariantDetail::Raw {
            generators: u.generators.iter().map(|a| u.field.fmt_elem(a)).collect(),
        },
    }
}

/// Tr_{E/F} via the diagonalized trace form Tr(a·b_i·b_j).
pub fn gw_trace<F: Field>(ext: &Extension<F>, u: &GWClass<Extension<F>>) -> Result<GWClass<F>> {
    if u.field != *ext {
        return Err(Error::FieldMismatch(u.field.describe(), ext.describe()));
    }
    let base = ext.base();
    let d = ext.degree() as i64;
    let mut out = GWClass::hyperbolic(base, u.hyperbolic * d);
    out.subtraction_used = u.subtraction_used;
    for a in &u.generators {
        let diag = diagonalize_symmetric(base, &ext.trace_form(a));
        if diag.iter().any(|c| base.is_zero(c)) {
            return Err(Error::UnsupportedExtension(format!(
                "degenerate trace form over {}",
                ext.describe()
            )));
        }
        out.generators.extend(diag);
    }
    Ok(out)
}

/// Tr_{ℂ/ℝ} of a class of rank r is r·ℍ.
pub fn complex_trace<F: Field>(reals: &F, rank: i64) -> Result<GWClass<F>> {
    if reals.square_class_kind() != SquareClassKind::Real {
        return Err(Error::UnsupportedExtension(format!(
            "C over {}",
            reals.describe()
        )));
    }
    Ok(GWClass::hyperbolic(reals, rank))
}

/// Rank-m class over ℂ((t)) with prescribed discriminant parity.
pub fn laurent_class(view: &LaurentView, rank: usize, parity: u8) -> GWClass<LaurentView> {
    let t = view.gen();
    let tp = if parity % 2 == 1 { t } else { view.one() };
    if rank == 0 {
        return GWClass::zero(view);
    }
    let mut u = GWClass::hyperbolic(view, ((rank - 1) / 2) as i64);
    if rank % 2 == 0 {
        u.generators.push(view.one());
    }
    u.generators.push(tp);
    u
}

/// Tr_{ℂ((s))/ℂ((t))} with s^m = t of ⟨s^k⟩: parity m−1 for k even, m for k odd.
pub fn laurent_trace(view: &LaurentView, m: usize, k: i64) -> Result<GWClass<LaurentView>> {
    if m == 0 {
        return Err(Error::UnsupportedExtension("ramification index 0".into()));
    }
    let parity = (if k.rem_euclid(2) == 0 { m + 1 } else { m }) % 2;
    Ok(laurent_class(view, m, parity as u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat_int;
    use crate::field::{Fp, Reals};
    use crate::poly::DensePoly;

    #[test]
    fn hyperbolic_over_reals() {
        let u = GWClass::diag(&Reals, vec![rat_int(1), rat_int(-1)]).unwrap();
        assert_eq!(u.invariants().unwrap(), GWClass::hyperbolic(&Reals, 1).invariants().unwrap());
    }

    #[test]
    fn disc_over_f13_and_f7() {
        let f13 = Fp::new(13).unwrap();
        let u = GWClass::diag(&f13, vec![3, 3]).unwrap();
        assert_eq!(
            u.invariants().unwrap().detail,
            InvariantDetail::DiscIsSquare { disc_is_square: true }
        );
        let f7 = Fp::new(7).unwrap();
        let v = GWClass::diag1(&f7, 2).unwrap();
        assert_eq!(
            v.invariants().unwrap().detail,
            InvariantDetail::DiscIsSquare { disc_is_square: true }
        );
    }

    #[test]
    fn scaling() {
        let u = GWClass::diag(&Reals, vec![rat_int(1), rat_int(1)]).unwrap();
        let v = u.scale(&rat_int(-1)).unwrap();
        assert_eq!(
            v.invariants().unwrap().detail,
            InvariantDetail::Signature { signature: -2 }
        );
        assert_eq!(u.scale(&rat_int(0)), Err(Error::ZeroScale));
        let h = GWClass::hyperbolic(&Reals, 1).scale(&rat_int(5)).unwrap();
        assert_eq!(h, GWClass::hyperbolic(&Reals, 1));
    }

    #[test]
    fn laurent_valuation_parity() {
        let view = LaurentView::new("t");
        let u = GWClass::diag1(&view, view.gen()).unwrap();
        assert_eq!(
            u.invariants().unwrap().detail,
            InvariantDetail::DiscParity { disc_parity: 1 }
        );
    }

    #[test]
    fn trace_f9_over_f3() {
        let f3 = Fp::new(3).unwrap();
        let ext = Extension::new(&f3, &DensePoly::from_i64s(&f3, &[1, 0, 1])).unwrap();
        let one = GWClass::diag1(&ext, ext.one()).unwrap();
        let t = gw_trace(&ext, &one).unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(
            t.invariants().unwrap().detail,
            InvariantDetail::DiscIsSquare { disc_is_square: false }
        );
    }

    #[test]
    fn field_mismatch() {
        let a = GWClass::<Fp>::zero(&Fp::new(5).unwrap());
        let b = GWClass::<Fp>::zero(&Fp::new(7).unwrap());
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
    }
}
