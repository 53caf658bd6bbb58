//! Golden-file pin of the Laplacian Macaulay matrices for the single
//! 3-edge, plus the hand-derived spot checks that anchor the file.

use hyperspec_core::macaulay::{dump_csv, macaulay_matrices};
use hyperspec_core::tensor::laplacian_tensor;
use hyperspec_core::{Hypergraph, RatTensor};

#[test]
fn laplacian_edge3_dump_matches_golden() {
    let h = Hypergraph::from_one_based(3, 3, vec![vec![1, 2, 3]]).unwrap();
    let l: RatTensor = laplacian_tensor(&h);
    let pair = macaulay_matrices(&l, 1500).unwrap();
    let (m, mprime) = dump_csv(&pair);
    assert_eq!(
        m,
        include_str!("golden/macaulay_laplacian_edge3_m.csv"),
        "M dump drifted from the golden file"
    );
    assert_eq!(
        mprime,
        include_str!("golden/macaulay_laplacian_edge3_mprime.csv"),
        "M' dump drifted from the golden file"
    );
}

/// The golden file is anchored by hand computation: with
/// F_1 = x1^2 - x2 x3, row x1^4 is x1^2 * F_1 = x1^4 - x1^2 x2 x3.
#[test]
fn golden_rows_match_hand_expansion() {
    let m = include_str!("golden/macaulay_laplacian_edge3_m.csv");
    let lines: Vec<&str> = m.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    let row_x1_4: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row_x1_4[0], "x1^4");
    let col = |name: &str| header.iter().position(|&h| h == name).unwrap();
    assert_eq!(row_x1_4[col("x1^4")], "1");
    assert_eq!(row_x1_4[col("x1^2*x2*x3")], "-1");
    assert_eq!(
        row_x1_4.iter().skip(1).filter(|&&v| v != "0").count(),
        2,
        "x1^2 * F_1 has exactly two monomials"
    );

    // x1 x2 x3^2 belongs to S_3: x1 x2 * F_3 = x1 x2 x3^2 - x1^2 x2^2
    let row = lines
        .iter()
        .find(|l| l.starts_with("x1*x2*x3^2,"))
        .unwrap()
        .split(',')
        .collect::<Vec<_>>();
    assert_eq!(row[col("x1*x2*x3^2")], "1");
    assert_eq!(row[col("x1^2*x2^2")], "-1");

    // M' for the single 3-edge is the 3x3 identity
    let mprime = include_str!("golden/macaulay_laplacian_edge3_mprime.csv");
    let rows: Vec<&str> = mprime.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1], "x1^2*x2^2,1,0,0");
    assert_eq!(rows[2], "x1^2*x3^2,0,1,0");
    assert_eq!(rows[3], "x2^2*x3^2,0,0,1");
}
