//! End-to-end checks across stage boundaries: matrix instance to CNF to
//! Subset Sum and back, including the file formats in between.

use pmviol_core::cnf::CnfFormula;
use pmviol_core::instance::{generate_unique_violation, PMatrixInstance};
use pmviol_core::mask::SubsetMask;
use pmviol_core::sat_encode::{canonical_solution, decode_sat_solution, encode_sat, VarMap};
use pmviol_core::solvers::{
    brute_force_subset_sum, mitm_subset_sum, ppsz_solve, sat_enumerate, Outcome,
};
use pmviol_core::subset_sum::{
    decode_subset_sum_solution, encode_subset_sum, DecodeMap, SubsetSumInstance,
};

#[test]
fn one_dimensional_selection_space_has_exactly_one_solution() {
    let witness = SubsetMask::from_indices(&[0], 1).unwrap();
    let inst = PMatrixInstance::product_profile(1, witness).unwrap();
    let (cnf, varmap) = encode_sat(&inst).unwrap();
    let (ss, map) = encode_subset_sum(&cnf).unwrap();
    assert_eq!(ss.item_count(), 16);

    let values: Vec<u64> = ss
        .items()
        .iter()
        .map(|it| {
            it.digits()
                .iter()
                .fold(0u64, |acc, &d| acc * 10 + u64::from(d))
        })
        .collect();
    let target: u64 = ss
        .target()
        .iter()
        .fold(0u64, |acc, &d| acc * 10 + u64::from(d));

    let mut matches = Vec::new();
    for bits in 0..1u32 << 16 {
        let sum: u64 = values
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, v)| v)
            .sum();
        if sum == target {
            matches.push(bits);
        }
    }
    assert_eq!(matches.len(), 1, "selection space must pin one solution");

    let chosen: Vec<bool> = (0..16).map(|i| matches[0] >> i & 1 == 1).collect();
    let assignment = decode_subset_sum_solution(&map, &chosen).unwrap();
    assert_eq!(decode_sat_solution(&varmap, &assignment).unwrap(), witness);
}

#[test]
fn formula_solutions_stay_unique_through_dimension_four() {
    for n in 1..=4usize {
        for k in 1..=n {
            let inst = generate_unique_violation(n, k, 99, 20).unwrap();
            let (cnf, map) = encode_sat(&inst).unwrap();
            let solutions = sat_enumerate(&cnf).unwrap();
            assert_eq!(solutions.len(), 1, "n={n} k={k}");
            assert_eq!(
                decode_sat_solution(&map, &solutions[0]).unwrap(),
                inst.witness().unwrap()
            );
        }
    }
}

#[test]
fn pipeline_through_serialized_artifacts_matches_in_memory() {
    let inst = generate_unique_violation(3, 2, 4, 20).unwrap();

    let reloaded = PMatrixInstance::from_json(&inst.to_json()).unwrap();
    let (cnf_a, map_a) = encode_sat(&inst).unwrap();
    let (cnf_b, map_b) = encode_sat(&reloaded).unwrap();
    assert_eq!(cnf_a.to_dimacs(), cnf_b.to_dimacs());
    assert_eq!(map_a, map_b);

    let parsed = CnfFormula::from_dimacs(&cnf_a.to_dimacs()).unwrap();
    let (ss_a, dec_a) = encode_subset_sum(&cnf_a).unwrap();
    let (ss_b, dec_b) = encode_subset_sum(&parsed).unwrap();
    assert_eq!(ss_a, ss_b);
    assert_eq!(dec_a, dec_b);

    let ss_c = SubsetSumInstance::from_json(&ss_a.to_json()).unwrap();
    assert_eq!(ss_a, ss_c);
    let dec_c = DecodeMap::from_json(&dec_a.to_json()).unwrap();
    assert_eq!(dec_a, dec_c);
    let map_c = VarMap::from_json(&map_a.to_json()).unwrap();
    assert_eq!(map_a, map_c);
}

#[test]
fn randomized_solver_recovers_witnesses_end_to_end() {
    for (n, k, seed) in [(2, 1, 0), (4, 3, 1), (6, 3, 2)] {
        let inst = generate_unique_violation(n, k, seed, 20).unwrap();
        let (cnf, map) = encode_sat(&inst).unwrap();
        let (found, log) = ppsz_solve(&cnf, 100_000, seed);
        assert_eq!(log.outcome, Outcome::Found);
        let assignment = found.unwrap();
        assert_eq!(
            decode_sat_solution(&map, &assignment).unwrap(),
            inst.witness().unwrap()
        );
    }
}

#[test]
fn subset_sum_solvers_recover_witnesses_end_to_end() {
    // 16 items at n=1 fits the exhaustive solver, 32 at n=2 needs the
    // meet-in-the-middle table.
    let inst = generate_unique_violation(1, 1, 0, 20).unwrap();
    let (cnf, varmap) = encode_sat(&inst).unwrap();
    let (ss, map) = encode_subset_sum(&cnf).unwrap();
    let (found, _) = brute_force_subset_sum(&ss).unwrap();
    let assignment = decode_subset_sum_solution(&map, &found.unwrap()).unwrap();
    assert_eq!(
        decode_sat_solution(&varmap, &assignment).unwrap(),
        inst.witness().unwrap()
    );

    let inst = generate_unique_violation(2, 2, 7, 20).unwrap();
    let (cnf, varmap) = encode_sat(&inst).unwrap();
    let (ss, map) = encode_subset_sum(&cnf).unwrap();
    assert_eq!(ss.item_count(), 32);
    let (found, log) = mitm_subset_sum(&ss).unwrap();
    assert_eq!(log.table_entries, 1 << 16);
    let assignment = decode_subset_sum_solution(&map, &found.unwrap()).unwrap();
    assert_eq!(
        decode_sat_solution(&varmap, &assignment).unwrap(),
        inst.witness().unwrap()
    );
}

#[test]
fn canonical_solutions_thread_every_stage() {
    let inst = generate_unique_violation(5, 2, 31, 20).unwrap();
    let witness = inst.witness().unwrap();
    let (cnf, varmap) = encode_sat(&inst).unwrap();
    let solution = canonical_solution(&varmap, witness);
    assert!(cnf.eval(&solution));

    let (ss, map) = encode_subset_sum(&cnf).unwrap();
    let chosen = pmviol_core::subset_sum::induced_selection(&cnf, &solution).unwrap();
    assert!(ss.check_selection(&chosen).unwrap());
    let decoded = decode_subset_sum_solution(&map, &chosen).unwrap();
    assert_eq!(decoded, solution);
    assert_eq!(decode_sat_solution(&varmap, &decoded).unwrap(), witness);
}

#[test]
fn redacted_instance_files_still_verify() {
    let inst = generate_unique_violation(6, 3, 12, 20).unwrap();
    let text = inst.redacted().to_json();
    let reloaded = PMatrixInstance::from_json(&text).unwrap();
    assert_eq!(reloaded.witness(), None);
    assert_eq!(
        reloaded.verify_unique_violation(20).unwrap(),
        inst.witness().unwrap()
    );
}

#[test]
fn mismatched_decode_maps_are_caught() {
    let (cnf_small, _) = encode_sat(&generate_unique_violation(2, 1, 0, 20).unwrap()).unwrap();
    let (_, map_small) = encode_subset_sum(&cnf_small).unwrap();
    let (cnf_large, _) = encode_sat(&generate_unique_violation(3, 1, 0, 20).unwrap()).unwrap();
    let (ss_large, _) = encode_subset_sum(&cnf_large).unwrap();
    let chosen = vec![false; ss_large.item_count()];
    assert!(decode_subset_sum_solution(&map_small, &chosen).is_err());

    let (found, _) = {
        let (ss_small, _) = encode_subset_sum(&cnf_small).unwrap();
        mitm_subset_sum(&ss_small).unwrap()
    };
    assert!(found.is_some());
}
