use std::collections::HashMap;
use std::path::Path;

use super::{b_chi, BiasConstant, Route, Subject};
use crate::arith::{DirichletCharacter, FundamentalDiscriminant};
use crate::bracket::BracketedValue;
use crate::error::{Error, Result};
use crate::zeros::{ingest_dir, tail_bracket, CountModel, LFunctionId, Weight, ZeroList};

/// Assumed accuracy of every listed ordinate.
const ORDINATE_TOLERANCE: f64 = 1e-9;

/// Zero lists keyed by L-function.
#[derive(Clone, Debug, Default)]
pub struct ZeroStore {
    lists: HashMap<LFunctionId, ZeroList>,
}

impl ZeroStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut store = Self::new();
        for list in ingest_dir(dir)? {
            store.insert(list);
        }
        Ok(store)
    }

    /// Replaces any list for the same L-function.
    pub fn insert(&mut self, list: ZeroList) {
        self.lists.insert(list.id.clone(), list);
    }

    pub fn get(&self, id: &LFunctionId) -> Option<&ZeroList> {
        self.lists.get(id)
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Zeros of the L-function of a primitive character, looked up as ζ,
    /// as a discriminant or as a numbered character.
    pub fn for_character(&self, chi: &DirichletCharacter) -> Option<&ZeroList> {
        let f = chi.conductor();
        if f == 1 {
            return self.get(&LFunctionId::Zeta);
        }
        if chi.is_real() {
            let d = if chi.kappa() == 0 { f as i64 } else { -(f as i64) };
            if let Some(list) = self.get(&LFunctionId::Discriminant(d)) {
                return Some(list);
            }
        }
        self.get(&LFunctionId::Character {
            modulus: f,
            index: chi.primitive().index(),
        })
    }
}

/// `Σ_ρ w(γ)` over all zeros of one L-function. `positive` lists the
/// positive ordinates and `negative` the absolute values of the negative
/// ones (the same list when the zeros are symmetric).
pub fn zero_sum(
    positive: &ZeroList,
    negative: &ZeroList,
    model: CountModel,
    weight: Weight,
) -> Result<BracketedValue> {
    let t = positive.t_max.min(negative.t_max);
    let n = positive.count_up_to(t) + negative.count_up_to(t);
    let partial = positive.weight_sum(weight, t) + negative.weight_sum(weight, t);
    let ordinate_err: f64 = positive.ordinates[..positive.count_up_to(t)]
        .iter()
        .chain(&negative.ordinates[..negative.count_up_to(t)])
        .map(|&g| weight.neg_derivative(g) * ORDINATE_TOLERANCE)
        .sum::<f64>()
        + n as f64 * f64::EPSILON * partial;
    let tail = tail_bracket(t, n as f64, model, weight)?;
    Ok(tail.shift(partial).widen(ordinate_err))
}

fn model_for(chi: &DirichletCharacter) -> CountModel {
    if chi.conductor() == 1 {
        CountModel::Zeta
    } else {
        CountModel::Dirichlet {
            conductor: chi.conductor(),
            kappa: chi.kappa(),
        }
    }
}

/// `Σ_ρ w(γ)` over the zeros of `L(s, χ*)` for the primitive character
/// inducing `chi`, from the zero lists in `store`.
pub fn character_zero_sum(chi: &DirichletCharacter, store: &ZeroStore, weight: Weight) -> Result<BracketedValue> {
    let chi = chi.primitive();
    let missing = |c: &DirichletCharacter| {
        Error::InsufficientData(format!(
            "insufficient zero data: no zero list for the character mod {} with index {}",
            c.modulus(),
            c.index()
        ))
    };
    let pos = store.for_character(&chi).ok_or_else(|| missing(&chi))?;
    let conj = chi.conj();
    let neg = if chi.is_real() {
        pos
    } else {
        store.for_character(&conj).ok_or_else(|| missing(&conj))?
    };
    zero_sum(pos, neg, model_for(&chi), weight)
}

/// `B_1` from a list of zeros of ζ.
pub fn b1_zero_sum(zeta: &ZeroList) -> Result<BiasConstant> {
    if zeta.id != LFunctionId::Zeta {
        return Err(Error::precondition(format!("expected zeros of zeta, got {}", zeta.id)));
    }
    Ok(BiasConstant {
        subject: Subject::Zeta,
        value: zero_sum(zeta, zeta, CountModel::Zeta, Weight::W1)?,
        route: Route::ZeroSum,
    })
}

/// `B_{χ_d}` by both routes. The result carries the closed-form bracket;
/// disjoint brackets are an error.
pub fn b_chi_two_route(d: FundamentalDiscriminant, zeros: &ZeroList) -> Result<(BiasConstant, BracketedValue)> {
    if zeros.id != LFunctionId::Discriminant(d.d()) {
        return Err(Error::precondition(format!("expected zeros of chi_{}, got {}", d.d(), zeros.id)));
    }
    let closed = b_chi(d)?;
    let model = CountModel::Dirichlet {
        conductor: d.conductor(),
        kappa: d.kappa(),
    };
    let sum = zero_sum(zeros, zeros, model, Weight::W1)?;
    if !sum.intersects(&closed.value) {
        return Err(Error::Consistency(format!(
            "B for d = {}: zero sum {sum} misses closed form {}",
            d.d(),
            closed.value
        )));
    }
    Ok((
        BiasConstant {
            route: Route::Both,
            ..closed
        },
        sum,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::b1;
    use crate::zeros::{l_zero_scan, zeta_zero_scan};

    #[test]
    fn zeta_route_contains_closed_form() {
        let z = zeta_zero_scan(200.0).unwrap();
        let b = b1_zero_sum(&z).unwrap();
        assert!(b.value.contains(b1().value.mid()), "{}", b.value);
        assert!(b.value.width() < 2e-3);
    }

    #[test]
    fn d5_two_routes() {
        let d = FundamentalDiscriminant::new(5).unwrap();
        let z = l_zero_scan(d, 100.0).unwrap();
        let (c, sum) = b_chi_two_route(d, &z).unwrap();
        assert!(sum.contains(c.value.mid()));
        assert!(sum.width() < 1e-2);
        assert!(c.value.mid() >= 0.156 && c.value.mid() < 0.157);
    }

    #[test]
    fn store_lookup() {
        let mut store = ZeroStore::new();
        let d = FundamentalDiscriminant::new(-4).unwrap();
        store.insert(l_zero_scan(d, 60.0).unwrap());
        let g = crate::arith::CharacterGroup::new(8);
        // the odd character mod 8 induced from mod 4
        let chi = g
            .characters()
            .into_iter()
            .find(|c| c.conductor() == 4)
            .unwrap();
        let s = character_zero_sum(&chi, &store, Weight::W1).unwrap();
        assert!(s.contains(b_chi(d).unwrap().value.mid()));
        let missing = g.characters().into_iter().find(|c| c.conductor() == 8).unwrap();
        assert!(matches!(
            character_zero_sum(&missing, &store, Weight::W1),
            Err(Error::InsufficientData(_))
        ));
    }
}
