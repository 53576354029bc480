//! Commands whose reports are stored under `tests/golden`.

pub const CASES: &[(&str, &[&str])] = &[
    (
        "classify_modular_ab",
        &["classify", "--group", "modular.grp", "--element", "a*b"],
    ),
    (
        "classify_modular_b",
        &["classify", "--group", "modular.grp", "--element", "b"],
    ),
    (
        "classify_hnn_central",
        &[
            "classify",
            "--group",
            "hnn_central.grp",
            "--element",
            "t",
            "--window",
            "3",
        ],
    ),
    (
        "extract_modular_3",
        &["extract", "--group", "modular.grp", "--ball", "3"],
    ),
    (
        "extract_z2z2z3_3",
        &[
            "extract",
            "--group",
            "z2z2z3.grp",
            "--ball",
            "3",
            "--seed",
            "7",
        ],
    ),
    (
        "certify_modular_4",
        &[
            "certify",
            "--group",
            "modular.grp",
            "--ball",
            "4",
            "--k",
            "0",
        ],
    ),
    (
        "entropy_f2_10",
        &["entropy", "--group", "f2.grp", "--N", "10", "--schottky"],
    ),
    (
        "entropy_modular_8",
        &["entropy", "--group", "modular.grp", "--N", "8"],
    ),
    (
        "smallcancel_3_3_7",
        &["smallcancel", "--pqr", "3,3,7", "--E", "0.5", "--D", "1"],
    ),
    ("smallcancel_4_4_5", &["smallcancel", "--pqr", "4,4,5"]),
    ("smallcancel_bad", &["smallcancel", "--pqr", "2,3,7"]),
    ("orbifold_2_3_7", &["orbifold", "--signature", "0,0;2,3,7"]),
    (
        "orbifold_2_2_2_3",
        &["orbifold", "--signature", "0,0;2,2,2,3"],
    ),
    ("orbifold_disc_2_3", &["orbifold", "--signature", "0,1;2,3"]),
    (
        "orbifold_nonorientable",
        &["orbifold", "--signature", "-2,0;3"],
    ),
    (
        "census_max_gens",
        &["census", "max-gens", "--k", "1", "--E", "0.01"],
    ),
    (
        "census_pres_count",
        &["census", "pres-count", "--N", "3", "--l", "4"],
    ),
    ("census_3mfd", &["census", "3mfd", "--E", "0.1", "--D", "2"]),
    ("census_surgery_1", &["census", "surgery", "--N", "1"]),
    (
        "census_surgery_split",
        &["census", "surgery", "--N", "5", "--split", "3,2"],
    ),
    (
        "census_tri_pres_modular",
        &[
            "census",
            "tri-pres",
            "--group",
            "modular.grp",
            "--ball",
            "1",
            "--radius",
            "3",
        ],
    ),
];
