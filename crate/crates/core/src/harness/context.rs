use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::config::Position;
use super::{gen_body, BodyClass};
use crate::error::Result;
use crate::polytope::{polar_h, surface_measure, HPolytope, SurfaceMeasure, VPolytope, MAX_ZONOTOPE_GENERATORS};
use crate::positions::{
    contact_points, default_contact_tol, fit_john_decomposition, min_surface_area_position, to_john_position,
    JohnDecomposition,
};

/// A body moved into the position a checker needs.
#[derive(Clone, Debug)]
pub enum Prepared {
    John {
        body: HPolytope,
        /// `None` when no decomposition could be certified.
        decomposition: Option<JohnDecomposition>,
    },
    /// Polar of a body in John's position.
    Lowner {
        body: VPolytope,
    },
    Minsurf {
        body: HPolytope,
        surface: SurfaceMeasure,
    },
}

/// Facet count for a random body: one of `2n, 3n, 4n`, capped so the
/// projection body stays within the zonotope volume guard.
pub fn facet_count(n: usize, seed: u64) -> usize {
    (n * (2 + (seed % 3) as usize)).min(MAX_ZONOTOPE_GENERATORS.max(2 * n))
}

/// The named bodies are already in John's position up to scaling.
fn john_body(class: BodyClass, body: &HPolytope) -> Result<HPolytope> {
    match class {
        BodyClass::Cube | BodyClass::Simplex => Ok(body.clone()),
        BodyClass::CrossPolytope => Ok(body.scaled((body.dim() as f64).sqrt())),
        BodyClass::Symmetric | BodyClass::General => {
            let (j, _) = to_john_position(body)?;
            Ok(j)
        }
    }
}

pub fn prepare(position: Position, class: BodyClass, body: &HPolytope) -> Result<Prepared> {
    Ok(match position {
        Position::John => {
            let body = john_body(class, body)?;
            let decomposition = contact_points(&body, default_contact_tol(&body))
                .and_then(|c| fit_john_decomposition(&c, body.is_symmetric()))
                .ok();
            Prepared::John { body, decomposition }
        }
        Position::Lowner => Prepared::Lowner { body: polar_h(&john_body(class, body)?)? },
        Position::Minsurf => {
            let body = min_surface_area_position(body)?.body;
            let surface = surface_measure(&body)?;
            Prepared::Minsurf { body, surface }
        }
    })
}

type Key = (Position, BodyClass, usize, u64);
type Slot = Arc<OnceLock<std::result::Result<Arc<Prepared>, String>>>;

/// Positioned bodies keyed by (position, class, n, seed), so checkers that
/// share trial seeds share the positioning work.
#[derive(Default)]
pub struct BodyCache {
    slots: Mutex<HashMap<Key, Slot>>,
}

impl BodyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(
        &self,
        position: Position,
        class: BodyClass,
        n: usize,
        seed: u64,
    ) -> std::result::Result<Arc<Prepared>, String> {
        let slot = {
            let mut map = self.slots.lock().expect("cache lock");
            map.entry((position, class, n, seed)).or_default().clone()
        };
        slot.get_or_init(|| {
            let body = gen_body(class, n, facet_count(n, seed), seed).map_err(|e| e.to_string())?;
            prepare(position, class, &body).map(Arc::new).map_err(|e| e.to_string())
        })
        .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_counts_in_range() {
        for n in 2..=8 {
            for s in 0..6 {
                let m = facet_count(n, s);
                assert!(2 * n <= m && m <= 4 * n && m <= 24.max(2 * n));
            }
        }
    }

    #[test]
    fn named_bodies_skip_the_solver() {
        let Prepared::John { body, decomposition } =
            prepare(Position::John, BodyClass::Cube, &HPolytope::cube(3)).unwrap()
        else {
            panic!()
        };
        assert_eq!(body, HPolytope::cube(3));
        assert!(decomposition.unwrap().is_valid(1e-12));
        let Prepared::John { body, .. } =
            prepare(Position::John, BodyClass::CrossPolytope, &HPolytope::cross_polytope(4)).unwrap()
        else {
            panic!()
        };
        assert!(body.offsets().iter().all(|b| (b - 1.0).abs() < 1e-15));
    }

    #[test]
    fn cache_returns_shared_body() {
        let c = BodyCache::new();
        let a = c.get(Position::John, BodyClass::General, 3, 11).unwrap();
        let b = c.get(Position::John, BodyClass::General, 3, 11).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
