//! Frozen matrices and small helpers shared by the golden and acceptance
//! suites.

use antimagic::labeling::LabelingMatrix;

pub fn grid(m: &LabelingMatrix) -> Vec<Vec<Option<i64>>> {
    let (rows, cols) = m.shape();
    (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j)).collect())
        .collect()
}

pub fn holes(rows: Vec<Vec<i64>>) -> Vec<Vec<Option<i64>>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|v| (v != 0).then_some(v)).collect())
        .collect()
}

/// The printed two-color matrices for orders 11 through 21 (0 marks a
/// hole).
pub fn chi2_expected() -> Vec<(usize, Vec<Vec<i64>>)> {
    vec![
        (
            11,
            vec![
                vec![1, 3, 4, 5, 6, 8, 13, 0],
                vec![0, 12, 0, 10, 9, 7, 2, 0],
                vec![14, 0, 11, 0, 0, 0, 0, 15],
            ],
        ),
        (
            13,
            vec![
                vec![0, 2, 18, 4, 16, 6, 14, 0, 0, 10],
                vec![1, 0, 3, 17, 5, 15, 7, 13, 9, 0],
                vec![20, 19, 0, 0, 0, 0, 0, 8, 12, 11],
            ],
        ),
        (
            15,
            vec![
                vec![1, 23, 22, 4, 20, 6, 7, 17, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 5, 19, 18, 8, 16, 10, 11, 13],
                vec![24, 2, 3, 21, 0, 0, 0, 0, 9, 15, 14, 12],
            ],
        ),
        (
            17,
            vec![
                vec![0, 2, 24, 4, 22, 6, 20, 8, 18, 10, 0, 12, 0, 0],
                vec![1, 0, 0, 23, 5, 21, 7, 19, 9, 17, 11, 0, 13, 0],
                vec![26, 25, 3, 0, 0, 0, 0, 0, 0, 0, 16, 15, 14, 27],
            ],
        ),
        (
            19,
            vec![
                vec![0, 2, 30, 4, 28, 6, 26, 8, 24, 10, 22, 0, 0, 0, 0, 16],
                vec![1, 0, 0, 0, 5, 27, 7, 25, 9, 23, 11, 21, 13, 19, 15, 0],
                vec![32, 31, 3, 29, 0, 0, 0, 0, 0, 0, 0, 12, 20, 14, 18, 17],
            ],
        ),
        (
            21,
            vec![
                vec![1, 35, 34, 4, 5, 31, 30, 8, 9, 27, 26, 12, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 7, 29, 28, 10, 11, 25, 24, 14, 15, 21, 20, 18],
                vec![36, 2, 3, 33, 32, 6, 0, 0, 0, 0, 0, 0, 13, 23, 22, 16, 17, 19],
            ],
        ),
    ]
}

/// The Siamese order-5 square as printed.
pub fn siamese5_expected() -> Vec<Vec<i64>> {
    vec![
        vec![17, 24, 1, 8, 15],
        vec![23, 5, 7, 14, 16],
        vec![4, 6, 13, 20, 22],
        vec![10, 12, 19, 21, 3],
        vec![11, 18, 25, 2, 9],
    ]
}

/// The K_{5,5} labeling grid (Siamese square, middle column shifted up).
pub fn k55_expected() -> Vec<Vec<i64>> {
    vec![
        vec![17, 24, 7, 8, 15],
        vec![23, 5, 13, 14, 16],
        vec![4, 6, 19, 20, 22],
        vec![10, 12, 25, 21, 3],
        vec![11, 18, 1, 2, 9],
    ]
}

/// The K_{4,5} labeling grid (interleave with the triple swap).
pub fn k45_expected() -> Vec<Vec<i64>> {
    vec![
        vec![2, 3, 5, 7, 12],
        vec![19, 18, 16, 14, 9],
        vec![1, 4, 6, 8, 10],
        vec![20, 17, 15, 13, 11],
    ]
}

/// The rim label sequence S for the k = 3 wheel construction.
pub fn wheel3_rim_expected() -> Vec<i64> {
    vec![1, 9, 5, 7, 8, 3, 10, 6, 2, 12, 4, 11]
}
