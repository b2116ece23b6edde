mod common;

use boxpleat::polycube::{parse_polycube, Cell, Dir, Face, PlanStep, PolycubeError, Polycube};
use common::{cells, random_polycube};
use proptest::prelude::*;
use rand::SeedableRng;

#[test]
fn parse_examples() {
    assert_eq!(parse_polycube("0 0 0").unwrap().polycube.len(), 1);
    assert_eq!(parse_polycube("0 0 0\n1 0 0").unwrap().polycube.len(), 2);
    assert!(matches!(parse_polycube("0 0 0\n2 0 0"), Err(PolycubeError::Disconnected { .. })));
    assert_eq!(parse_polycube("").unwrap_err(), PolycubeError::EmptyInput);
    assert!(matches!(parse_polycube("1 2 x"), Err(PolycubeError::Syntax { line: 1, .. })));
}

#[test]
fn dual_graph_examples() {
    let g = cells(&[(0, 0, 0)]).dual_graph();
    assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
    let g = cells(&[(0, 0, 0), (1, 0, 0)]).dual_graph();
    assert_eq!(g.edges.len(), 1);
    let g = cells(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]).dual_graph();
    assert_eq!((g.vertices.len(), g.edges.len()), (4, 4));
}

#[test]
fn build_plan_examples() {
    let g = Face::new(Cell::new(0, 0, 0), Dir::NegZ);
    let plan = cells(&[(0, 0, 0)]).build_plan(g).unwrap();
    assert_eq!(plan.insertion_order, vec![PlanStep { cell: Cell::new(0, 0, 0), attach: None }]);

    let plan = cells(&[(0, 0, 0), (1, 0, 0)]).build_plan(g).unwrap();
    assert_eq!(plan.insertion_order[1].attach, Some(Face::new(Cell::new(0, 0, 0), Dir::PosX)));

    let plan = cells(&[(0, 0, 0), (1, 0, 0), (1, 1, 0)]).build_plan(g).unwrap();
    let order: Vec<Cell> = plan.insertion_order.iter().map(|s| s.cell).collect();
    assert_eq!(order, vec![Cell::new(0, 0, 0), Cell::new(1, 0, 0), Cell::new(1, 1, 0)]);
}

#[test]
fn surface_examples() {
    let count = |p: &Polycube| {
        let (f, i) = p.surface_and_interior();
        (f.len(), i.len())
    };
    assert_eq!(count(&cells(&[(0, 0, 0)])), (6, 0));
    assert_eq!(count(&cells(&[(0, 0, 0), (1, 0, 0)])), (10, 1));
    assert_eq!(count(&cells(&[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])), (16, 4));
}

#[test]
fn plan_tie_breaking_is_lexicographic() {
    // A plus shape: the largest leaf goes first, so it is inserted last.
    let p = cells(&[(0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)]);
    let plan = p.build_plan(Face::new(Cell::new(0, 0, 0), Dir::NegZ)).unwrap();
    assert_eq!(plan.insertion_order.last().unwrap().cell, Cell::new(1, 0, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plan_invariants(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = random_polycube(&mut rng, n);
        prop_assert!(p.dual_graph().is_connected());
        let g = p.default_seam_face();
        let plan = p.build_plan(g).unwrap();
        prop_assert_eq!(plan.insertion_order.len(), p.len());
        let mut seen = Vec::new();
        for step in &plan.insertion_order {
            if let Some(f) = step.attach {
                prop_assert!(seen.contains(&f.cell));
                prop_assert_eq!(f.neighbor(), step.cell);
            }
            seen.push(step.cell);
            prop_assert!(Polycube::new(seen.iter().copied()).is_ok());
        }
        prop_assert_eq!(p.build_plan(g).unwrap(), plan);
    }

    #[test]
    fn face_slot_identity(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = random_polycube(&mut rng, n);
        let (faces, interior) = p.surface_and_interior();
        prop_assert_eq!(faces.len() + 2 * interior.len(), 6 * p.len());
    }
}
