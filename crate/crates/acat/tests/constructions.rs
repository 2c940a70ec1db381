//! Integration tests for the derived-category constructions.

use std::sync::Arc;

use acat::axioms::{check_graded, linked_clusters, split, validate_bounded_acyclic};
use acat::builder::{build_category, Presentation};
use acat::category::{Category, MorId, ObjId};
use acat::constructions::{
    category_of_upper_categories, check_local_embedding, iterated_upper, lower_category,
    section_category, upper_category,
};
use acat::fixtures::{fixture, ngon};
use acat::functor::Functor;
use acat::iso::is_isomorphic;

fn get(name: &str) -> Arc<Category> {
    fixture(name).unwrap().build()
}

#[test]
fn cube_vertex_figure_is_a_triangle_lattice() {
    let cube = get("cube");
    let triangle = ngon(3).build();
    let vertices: Vec<ObjId> = cube
        .objects()
        .filter(|&o| cube.rank(o).0 == 0)
        .collect();
    assert_eq!(vertices.len(), 8);
    let first = upper_category(&cube, vertices[0], true);
    for &v in &vertices {
        let up = upper_category(&cube, v, true);
        let by_rank = |r: i64| {
            up.cat
                .objects()
                .filter(|&o| up.cat.is_proper(o) && up.cat.rank(o).0 == r)
                .count()
        };
        assert_eq!((by_rank(0), by_rank(1), by_rank(2)), (3, 3, 1));
        assert!(up
            .cat
            .induced_poset()
            .order_isomorphism(&triangle.induced_poset())
            .is_some());
        assert!(is_isomorphic(&up.cat, &first.cat).is_some());
    }
}

#[test]
fn upper_categories_satisfy_the_axioms() {
    for name in ["segment", "torus", "crescent", "cube"] {
        let c = get(name);
        for o in c.objects() {
            let up = upper_category(&c, o, true);
            assert!(
                validate_bounded_acyclic(&up.cat).passed(),
                "upper({name}, {}) not bounded acyclic",
                c.object(o).name
            );
            assert!(check_graded(&up.cat).passed());
        }
    }
}

#[test]
fn crescent_splits_into_two_isomorphic_parts() {
    let c = get("crescent");
    let p = c.object_by_name("P").unwrap();
    let up = upper_category(&c, p, true);
    let clusters = linked_clusters(&up.cat);
    assert_eq!(clusters.len(), 2);
    assert_eq!(clusters[0].len(), 3);
    assert_eq!(clusters[1].len(), 3);
    let parts = split(&up.cat);
    assert_eq!(parts.len(), 2);
    assert!(is_isomorphic(&parts[0], &parts[1]).is_some());
    for part in &parts {
        assert!(validate_bounded_acyclic(part).passed());
    }
}

#[test]
fn split_of_unsplittable_category_is_itself() {
    let c = get("segment");
    let parts = split(&c);
    assert_eq!(parts.len(), 1);
    assert!(Arc::ptr_eq(&parts[0], &c));
}

#[test]
fn iterated_upper_is_composable_on_the_cube() {
    let cube = get("cube");
    let v = cube.object_by_name("v000").unwrap();
    let up = upper_category(&cube, v, true);
    for marked in up.cat.objects() {
        let base = up.downward.apply_object(marked);
        let twice = iterated_upper(&up, marked, true);
        let direct = upper_category(&cube, base, true);
        assert!(
            is_isomorphic(&twice.cat, &direct.cat).is_some(),
            "iterated upper at {} differs from direct upper",
            up.cat.object(marked).name
        );
    }
}

#[test]
fn section_of_terminal_is_upper_and_of_initial_is_lower() {
    for name in ["segment", "torus", "crescent"] {
        let c = get(name);
        for o in c.objects() {
            let t = c.terminal_morphism(o).unwrap();
            let sec = section_category(&c, t, true);
            let up = upper_category(&c, o, true);
            assert!(
                is_isomorphic(&sec.cat, &up.cat).is_some(),
                "section of terminal({name}, {}) is not the upper category",
                c.object(o).name
            );
            let i = c.initial_morphism(o).unwrap();
            let sec = section_category(&c, i, true);
            let low = lower_category(&c, o);
            assert!(
                is_isomorphic(&sec.cat, &low.cat).is_some(),
                "section of initial({name}, {}) is not the lower category",
                c.object(o).name
            );
        }
    }
}

#[test]
fn lower_of_segment_edge_has_two_point_objects() {
    let c = get("segment");
    let l = c.object_by_name("L").unwrap();
    let low = lower_category(&c, l);
    let proper: Vec<ObjId> = low.cat.objects().filter(|&o| low.cat.is_proper(o)).collect();
    assert_eq!(proper.len(), 2);
    for o in proper {
        assert_eq!(low.cat.rank(o).0, 0);
    }
}

#[test]
fn downward_functors_are_local_embeddings() {
    for name in ["segment", "circle_point", "torus", "crescent"] {
        let c = get(name);
        for o in c.objects() {
            let up = upper_category(&c, o, true);
            let report = check_local_embedding(&up.downward).unwrap();
            assert!(report.passed(), "downward of upper({name}, {}) failed", c.object(o).name);
            let low = lower_category(&c, o);
            let report = check_local_embedding(&low.downward).unwrap();
            assert!(report.passed());
        }
        let uc = category_of_upper_categories(&c);
        for f in &uc.functors {
            assert!(check_local_embedding(f).unwrap().passed());
        }
    }
}

/// Functor collapsing the whole proper part of the segment onto a single
/// point; a valid functor, but not a local embedding.
fn collapsing_functor() -> Functor {
    let seg = get("segment");
    let mut p = Presentation::default();
    p.object("X", 0, None);
    let target = Arc::new(build_category(&p).unwrap());
    let x = target.object_by_name("X").unwrap();
    let object_map: Vec<ObjId> = seg
        .objects()
        .map(|o| {
            if o == seg.initial() {
                target.initial()
            } else if o == seg.terminal() {
                target.terminal()
            } else {
                x
            }
        })
        .collect();
    let morphism_map: Vec<MorId> = seg
        .morphisms()
        .map(|m| {
            let src = object_map[seg.source(m).0];
            let dst = object_map[seg.target(m).0];
            if src == dst {
                target.identity(src)
            } else {
                target.hom(src, dst)[0]
            }
        })
        .collect();
    Functor {
        source: seg,
        target,
        object_map,
        morphism_map,
    }
}

#[test]
fn collapsing_functor_is_not_a_local_embedding() {
    let f = collapsing_functor();
    assert!(f.check().is_ok(), "collapse must still be a functor");
    let report = check_local_embedding(&f).unwrap();
    assert!(!report.passed());
}

#[test]
fn category_of_upper_categories_is_the_opposite() {
    for name in ["segment", "cone", "cube"] {
        let c = get(name);
        let uc = category_of_upper_categories(&c);
        assert!(uc.iso_to_opposite.0.check().is_ok());
        assert!(uc.iso_to_opposite.0.is_bijective());
        let opp = Arc::new(c.opposite());
        assert!(
            is_isomorphic(&uc.cat, &opp).is_some(),
            "upper-categories category of {name} is not the opposite"
        );
    }
}

#[test]
fn opposite_is_an_involution_up_to_isomorphism() {
    for name in ["segment", "torus", "cone"] {
        let c = get(name);
        let back = Arc::new(c.opposite().opposite());
        assert!(is_isomorphic(&c, &back).is_some());
    }
}
