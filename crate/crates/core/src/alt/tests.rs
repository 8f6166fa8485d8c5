use super::*;
use crate::rep::random::{random_rep, random_unimodular, RandomRepConfig};

fn cfg() -> Config {
    Config::default()
}

const ALL: [IntertwinerStrategy; 4] =
    [IntertwinerStrategy::Kronecker, IntertwinerStrategy::Naive, IntertwinerStrategy::Orbit, IntertwinerStrategy::Chain];

fn layout(entries: &[(usize, usize, usize)]) -> Vec<LayoutEntry> {
    entries.iter().map(|&(irrep, multiplicity, degree)| LayoutEntry { irrep, multiplicity, degree }).collect()
}

#[test]
fn defining_rep_of_s3_layout() {
    let irreps = IrrepList::symmetric(3, &cfg()).unwrap();
    let rep = Representation::perm_rep(irreps.group().clone());
    let model = block_diag_rep(&rep, &irreps, &cfg()).unwrap();
    assert_eq!(model.layout, layout(&[(0, 1, 1), (1, 1, 2)]));
    assert_eq!(Character::of(&model.tau, 100).unwrap(), Character::of(&rep, 100).unwrap());
}

#[test]
fn standard_squared_layout() {
    let irreps = IrrepList::symmetric(3, &cfg()).unwrap();
    let std = &irreps.irreps()[1];
    let sq = std.tensor(std).unwrap();
    let model = block_diag_rep(&sq, &irreps, &cfg()).unwrap();
    // partitions order the irreps trivial, standard, sign
    assert_eq!(model.layout, layout(&[(0, 1, 1), (1, 1, 2), (2, 1, 1)]));
}

#[test]
fn block_diagonal_input_keeps_its_blocks() {
    let irreps = IrrepList::dihedral(4).unwrap();
    let parts = [irreps.irreps()[4].clone(), irreps.irreps()[1].clone(), irreps.irreps()[4].clone()];
    let rep = Representation::direct_sum(&parts).unwrap();
    let model = block_diag_rep(&rep, &irreps, &cfg()).unwrap();
    assert_eq!(model.layout, layout(&[(1, 1, 1), (4, 2, 2)]));
}

#[test]
fn self_intertwiner_commutes() {
    let irreps = IrrepList::symmetric(4, &cfg()).unwrap();
    let rep = Representation::perm_rep(irreps.group().clone());
    let tau = block_diag_rep(&rep, &irreps, &cfg()).unwrap().tau;
    let mut st = SumStats::default();
    for strategy in ALL {
        let a = intertwiner(&tau, &tau, strategy, 1, &cfg(), &mut st).unwrap();
        for t in tau.generator_images() {
            assert_eq!(t.mul(&a.a), a.a.mul(t), "{strategy:?}");
        }
        assert!(a.a.mul(&a.a_inv).is_identity());
    }
}

#[test]
fn known_conjugator_is_recovered_up_to_centraliser() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let irreps = IrrepList::dihedral(5).unwrap();
    let tau = model_from_multiplicities(&irreps, &[1, 0, 2, 1]).unwrap().tau;
    let m = random_unimodular(&mut rng, tau.degree());
    let rho = tau.conjugate_by(&m).unwrap();
    let mut st = SumStats::default();
    let a = intertwiner(&rho, &tau, IntertwinerStrategy::Kronecker, 3, &cfg(), &mut st).unwrap();
    let c = a.a.mul(&m.invert().unwrap());
    for t in tau.generator_images() {
        assert_eq!(t.mul(&c), c.mul(t));
    }
}

#[test]
fn all_strategies_give_valid_intertwiners() {
    let config = cfg();
    let opts = RandomRepConfig { max_degree: 8, ..Default::default() };
    for seed in 0..20 {
        let r = random_rep(100 + seed, &opts, &config).unwrap();
        let tau = model_from_multiplicities(&r.irreps, &r.multiplicities).unwrap().tau;
        for strategy in ALL {
            let mut st = SumStats::default();
            let a = intertwiner(&r.rep, &tau, strategy, seed, &config, &mut st).unwrap();
            assert!(satisfies_intertwining(&r.rep, &tau, &a.a), "seed {seed} {strategy:?}");
            assert!(a.a.mul(&a.a_inv).is_identity());
            // A⁻¹ τ(g) A = ρ(g)
            for (rho_g, tau_g) in r.rep.generator_images().iter().zip(tau.generator_images()) {
                assert_eq!(&a.a_inv.mul(tau_g).mul(&a.a), rho_g);
            }
        }
    }
}

#[test]
fn intertwiner_is_deterministic() {
    let r = random_rep(7, &RandomRepConfig::default(), &cfg()).unwrap();
    let tau = model_from_multiplicities(&r.irreps, &r.multiplicities).unwrap().tau;
    let mut st = SumStats::default();
    let a = intertwiner(&r.rep, &tau, IntertwinerStrategy::Chain, 9, &cfg(), &mut st).unwrap();
    let b = intertwiner(&r.rep, &tau, IntertwinerStrategy::Chain, 9, &cfg(), &mut st).unwrap();
    assert_eq!(a.a, b.a);
}

#[test]
fn non_isomorphic_inputs_are_rejected() {
    let irreps = IrrepList::symmetric(3, &cfg()).unwrap();
    let mut st = SumStats::default();
    let err = intertwiner(&irreps.irreps()[0], &irreps.irreps()[2], IntertwinerStrategy::Naive, 0, &cfg(), &mut st);
    assert!(matches!(err, Err(Error::Inconsistent(_))));
}

#[test]
fn kronecker_respects_budget() {
    let irreps = IrrepList::symmetric(3, &cfg()).unwrap();
    let rep = Representation::perm_rep(irreps.group().clone());
    let tau = block_diag_rep(&rep, &irreps, &cfg()).unwrap().tau;
    let config = Config { memory_budget_bytes: 10, ..cfg() };
    let mut st = SumStats::default();
    assert!(matches!(
        intertwiner(&rep, &tau, IntertwinerStrategy::Kronecker, 0, &config, &mut st),
        Err(Error::MemoryBudget { .. })
    ));
    assert_eq!(default_strategy(3, &config), IntertwinerStrategy::Chain);
}

fn check_alternate(rep: &Representation, irreps: &IrrepList, out: &AlternateDecomposition) {
    let a = &out.intertwiner;
    assert!(a.a.mul(&a.a_inv).is_identity());
    let offsets = out.model.block_offsets();
    for (g, t) in rep.generator_images().iter().zip(out.model.tau.generator_images()) {
        let conj = a.a.mul(g).mul(&a.a_inv);
        assert_eq!(&conj, t);
        // entries outside the layout blocks vanish
        for i in 0..conj.rows() {
            for j in 0..conj.cols() {
                let same = offsets.iter().any(|&(_, at, d)| (at..at + d).contains(&i) && (at..at + d).contains(&j));
                assert!(same || conj[(i, j)].is_zero());
            }
        }
    }
    let basis = out.decomposition.basis_matrix().unwrap();
    assert_eq!(basis.rank(), rep.degree());
    for (i, w) in out.decomposition.subspaces() {
        let sub = rep.restrict(w).unwrap();
        assert_eq!(&Character::of(&sub, 1_000_000).unwrap(), &irreps.characters()[i]);
    }
}

#[test]
fn defining_rep_of_s5_splits() {
    let irreps = IrrepList::symmetric(5, &cfg()).unwrap();
    let rep = Representation::perm_rep(irreps.group().clone());
    let out = decompose_alternate(&rep, &irreps, &DecomposeOptions::default(), None, 0, &cfg()).unwrap();
    assert_eq!(out.decomposition.dimensions(), vec![1, 4]);
    check_alternate(&rep, &irreps, &out);
}

#[test]
fn alternate_recovers_random_ground_truth() {
    let config = cfg();
    for seed in 0..12 {
        let r = random_rep(seed, &RandomRepConfig::default(), &config).unwrap();
        let out = decompose_alternate(&r.rep, &r.irreps, &DecomposeOptions::default(), None, seed, &config).unwrap();
        assert_eq!(out.decomposition.multiplicities, r.multiplicities, "seed {seed}");
        check_alternate(&r.rep, &r.irreps, &out);
    }
}
