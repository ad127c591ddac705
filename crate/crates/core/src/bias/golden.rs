//! Values transcribed from the published tables. Table entries are truncated
//! to three decimals.

/// Positive members `d` of the discriminant set with `B_{χ_d}`.
pub const TABLE_POSITIVE: [(i64, f64); 113] = [
    (5, 0.156),
    (8, 0.235),
    (12, 0.330),
    (13, 0.396),
    (17, 0.387),
    (21, 0.614),
    (24, 0.552),
    (28, 0.572),
    (29, 0.879),
    (33, 0.566),
    (37, 0.814),
    (40, 0.697),
    (41, 0.682),
    (44, 0.908),
    (53, 1.463),
    (56, 1.056),
    (57, 0.768),
    (60, 0.973),
    (61, 0.993),
    (65, 0.897),
    (69, 1.238),
    (73, 0.797),
    (76, 0.939),
    (77, 1.922),
    (85, 1.176),
    (88, 1.070),
    (89, 1.033),
    (92, 1.565),
    (93, 1.590),
    (97, 0.913),
    (101, 1.838),
    (104, 1.498),
    (105, 1.014),
    (109, 1.218),
    (113, 1.245),
    (120, 1.368),
    (124, 1.164),
    (129, 1.079),
    (133, 1.573),
    (136, 1.210),
    (137, 1.368),
    (140, 1.853),
    (141, 1.555),
    (145, 1.052),
    (149, 1.926),
    (156, 1.418),
    (157, 1.769),
    (161, 1.328),
    (165, 1.824),
    (168, 1.783),
    (172, 1.449),
    (177, 1.315),
    (181, 1.557),
    (184, 1.302),
    (185, 1.543),
    (193, 1.195),
    (201, 1.291),
    (204, 1.563),
    (205, 1.656),
    (209, 1.511),
    (217, 1.278),
    (220, 1.585),
    (229, 1.714),
    (232, 1.620),
    (233, 1.746),
    (241, 1.228),
    (249, 1.338),
    (253, 1.969),
    (257, 1.962),
    (264, 1.868),
    (265, 1.331),
    (268, 1.709),
    (273, 1.617),
    (280, 1.667),
    (281, 1.587),
    (301, 1.798),
    (305, 1.781),
    (309, 1.964),
    (313, 1.501),
    (316, 1.563),
    (321, 1.556),
    (329, 1.735),
    (337, 1.468),
    (345, 1.581),
    (364, 1.677),
    (376, 1.809),
    (385, 1.490),
    (393, 1.812),
    (401, 1.747),
    (409, 1.489),
    (417, 1.852),
    (421, 1.890),
    (424, 1.739),
    (433, 1.689),
    (449, 1.808),
    (456, 1.974),
    (457, 1.648),
    (465, 1.889),
    (481, 1.570),
    (489, 1.790),
    (505, 1.596),
    (520, 1.937),
    (721, 1.747),
    (745, 1.940),
    (769, 1.840),
    (793, 1.916),
    (849, 1.963),
    (865, 1.894),
    (889, 1.808),
    (1009, 1.865),
    (1081, 1.988),
    (1129, 1.924),
    (1201, 1.950),
];

/// Negative members `d` of the discriminant set with `B_{χ_d}`.
pub const TABLE_NEGATIVE: [(i64, f64); 53] = [
    (-3, 0.113),
    (-4, 0.155),
    (-7, 0.255),
    (-8, 0.316),
    (-11, 0.507),
    (-15, 0.459),
    (-19, 1.052),
    (-20, 0.638),
    (-23, 0.569),
    (-24, 0.797),
    (-31, 0.809),
    (-35, 1.110),
    (-39, 0.823),
    (-40, 1.404),
    (-47, 0.845),
    (-51, 1.582),
    (-52, 1.837),
    (-55, 1.175),
    (-56, 1.096),
    (-59, 1.289),
    (-68, 1.335),
    (-71, 0.975),
    (-79, 1.382),
    (-83, 1.778),
    (-84, 1.576),
    (-87, 1.330),
    (-95, 1.163),
    (-103, 1.774),
    (-104, 1.389),
    (-111, 1.300),
    (-116, 1.540),
    (-119, 1.190),
    (-131, 1.677),
    (-143, 1.406),
    (-151, 1.853),
    (-152, 1.943),
    (-159, 1.485),
    (-164, 1.617),
    (-167, 1.489),
    (-191, 1.468),
    (-199, 1.870),
    (-215, 1.516),
    (-231, 1.755),
    (-239, 1.579),
    (-255, 1.892),
    (-263, 1.914),
    (-287, 1.933),
    (-311, 1.615),
    (-335, 1.783),
    (-359, 1.818),
    (-431, 1.938),
    (-479, 1.824),
    (-551, 1.980),
];

/// Size of the positive part of the discriminant set as stated in the text;
/// the table above has fewer rows.
pub const POSITIVE_COUNT: usize = 125;
pub const NEGATIVE_COUNT: usize = 53;

/// Moduli `q` with `B_q < 2C(q, 1)`.
pub const SET_Q: [u64; 24] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 16, 18, 20, 21, 24, 28, 30, 36, 40, 42, 48, 60];

/// Residues `a` for which `∫_2^X (π(x; q, a) − li(x)/φ(q)) dx` is eventually negative.
pub const TABLE3: [(u64, &[u64]); 27] = [
    (2, &[1]),
    (3, &[1]),
    (4, &[1]),
    (5, &[1, 4]),
    (7, &[1, 2, 4]),
    (8, &[1]),
    (9, &[1, 4, 7]),
    (10, &[1, 9]),
    (11, &[1, 3, 4, 5, 9]),
    (12, &[1]),
    (14, &[1, 9, 11]),
    (15, &[1, 4]),
    (16, &[1, 9]),
    (18, &[1, 7, 13]),
    (20, &[1, 9]),
    (21, &[1, 4, 16]),
    (22, &[1, 3, 5, 9, 15]),
    (24, &[1]),
    (28, &[1, 9, 25]),
    (30, &[1, 19]),
    (36, &[1, 13, 25]),
    (40, &[1, 9]),
    (42, &[1, 25, 37]),
    (48, &[1, 25]),
    (60, &[1, 49]),
    (84, &[1, 25, 37]),
    (120, &[1, 49]),
];
