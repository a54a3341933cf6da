//! Small reference networks and reference values used by tests and the CLI.

use crate::graph::Network;

/// The 14-node sample network, edges in ascending label order.
pub const SAMPLE_EDGES: [(i64, i64); 26] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 6),
    (3, 8),
    (5, 9),
    (6, 7),
    (6, 14),
    (7, 8),
    (9, 10),
    (9, 11),
    (9, 12),
    (9, 13),
    (10, 11),
    (10, 13),
    (10, 14),
    (11, 12),
    (11, 14),
    (12, 13),
    (12, 14),
    (13, 14),
];

/// A spanning tree of the sample network whose non-tree edges yield the
/// generators (5, 9) and (7, 8). It extends the tree
/// [`SAMPLE_SUBNETWORK_TREE`] of nodes 1 to 8.
pub const SAMPLE_TREE: [(i64, i64); 13] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (3, 6),
    (3, 8),
    (6, 7),
    (6, 14),
    (9, 10),
    (9, 11),
    (9, 12),
    (9, 13),
    (10, 14),
];

pub const SAMPLE_SUBNETWORK_TREE: [(i64, i64); 7] =
    [(1, 2), (1, 3), (1, 4), (1, 5), (3, 6), (3, 8), (6, 7)];

pub fn sample_network() -> Network {
    Network::from_labeled_edges(SAMPLE_EDGES)
}

/// The sample network restricted to nodes 1 to 8.
pub fn sample_subnetwork() -> Network {
    Network::from_labeled_edges(SAMPLE_EDGES.into_iter().filter(|&(u, v)| u <= 8 && v <= 8))
}

/// Face counts of the smallest `k`-cavities as printed in the reference
/// census, misprints included, indexed by `k - 1`.
pub const PRINTED_CENSUS: [&[u64]; 11] = [
    &[4, 4],
    &[6, 12, 8],
    &[8, 24, 32, 16],
    &[10, 40, 40, 80, 32],
    &[12, 60, 120, 240, 192, 64],
    &[14, 84, 280, 560, 672, 448, 128],
    &[16, 112, 448, 1120, 1792, 1792, 1024, 256],
    &[18, 144, 672, 2016, 4032, 5376, 4608, 2304, 512],
    &[20, 180, 960, 560, 3360, 8064, 13440, 15360, 11520, 1024],
    &[
        22, 220, 1320, 5280, 14784, 29568, 42240, 42240, 28160, 11264, 2048,
    ],
    &[
        24, 264, 1760, 7920, 25344, 59136, 101376, 125720, 112640, 67584, 24576, 4096,
    ],
];

/// Printed Euler characteristic of the smallest `k`-cavity, `1 + (-1)^k`.
pub fn printed_census_chi(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        2
    } else {
        0
    }
}

/// Differences between measured face counts of the smallest `k`-cavity and
/// the printed census row, one line per differing entry. Empty when no row
/// was printed for `k`.
pub fn census_discrepancies(k: usize, measured: &[u64]) -> Vec<String> {
    let Some(printed) = k.checked_sub(1).and_then(|i| PRINTED_CENSUS.get(i)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for j in 0..printed.len().max(measured.len()) {
        let (p, m) = (printed.get(j), measured.get(j));
        if p != m {
            let show = |x: Option<&u64>| x.map_or("nothing".to_string(), u64::to_string);
            out.push(format!(
                "k={k}: m_{j} printed {} measured {}",
                show(p),
                show(m)
            ));
        }
    }
    out
}

/// Reference values for the 297-node neural network.
pub mod neural {
    pub const NODES: usize = 297;
    pub const EDGES: usize = 2148;
    pub const COUNTS: [usize; 9] = [297, 2148, 3241, 2010, 801, 240, 40, 2, 0];
    pub const RANKS: [usize; 9] = [0, 296, 1713, 1407, 599, 202, 38, 2, 0];
    pub const BETTI: [usize; 9] = [1, 139, 121, 4, 0, 0, 0, 0, 0];
    pub const CHI: i64 = -21;

    /// A reference cavity: generating clique, node set and member cliques,
    /// all by node label. Where no generator was given the first listed
    /// clique stands in.
    pub struct ReferenceCavity {
        pub order: usize,
        pub generator: &'static [i64],
        pub nodes: &'static [i64],
        pub cliques: &'static [&'static [i64]],
    }

    pub const THREE_CAVITIES: [ReferenceCavity; 4] = [
        ReferenceCavity {
            order: 3,
            generator: &[164, 163, 119, 118],
            nodes: &[85, 13, 3, 164, 163, 119, 118, 158],
            cliques: &[
                &[85, 13, 3, 164],
                &[13, 3, 164, 163],
                &[3, 164, 163, 119],
                &[164, 163, 119, 118],
                &[163, 119, 118, 158],
                &[119, 118, 158, 85],
                &[118, 158, 85, 13],
                &[158, 85, 13, 3],
                &[85, 3, 164, 119],
                &[119, 158, 85, 3],
                &[3, 163, 119, 158],
                &[158, 13, 3, 163],
                &[163, 118, 158, 13],
                &[13, 164, 163, 118],
                &[118, 85, 13, 164],
                &[164, 119, 118, 85],
            ],
        },
        ReferenceCavity {
            order: 3,
            generator: &[119, 167, 118, 227],
            nodes: &[163, 3, 162, 119, 154, 167, 118, 227, 85, 13, 164],
            cliques: &[
                &[163, 3, 162, 119],
                &[3, 162, 119, 154],
                &[162, 119, 154, 118],
                &[119, 154, 118, 167],
                &[154, 118, 167, 13],
                &[118, 167, 13, 227],
                &[167, 13, 227, 3],
                &[13, 227, 3, 85],
                &[227, 3, 85, 119],
                &[3, 85, 119, 164],
                &[85, 119, 164, 118],
                &[119, 164, 118, 163],
                &[118, 163, 119, 162],
                &[162, 118, 163, 13],
                &[13, 162, 118, 154],
                &[154, 13, 162, 3],
                &[3, 154, 13, 167],
                &[167, 3, 154, 119],
                &[119, 167, 3, 227],
                &[227, 119, 167, 118],
                &[118, 227, 119, 85],
                &[85, 118, 227, 13],
                &[13, 85, 118, 164],
                &[164, 13, 85, 3],
                &[3, 164, 13, 163],
                &[163, 3, 164, 119],
                &[13, 163, 118, 164],
                &[163, 3, 162, 13],
            ],
        },
        ReferenceCavity {
            order: 3,
            generator: &[195, 185, 119, 118],
            nodes: &[171, 13, 3, 195, 185, 119, 118, 173],
            cliques: &[
                &[171, 13, 3, 195],
                &[13, 3, 195, 185],
                &[3, 195, 185, 119],
                &[195, 185, 119, 118],
                &[185, 119, 118, 173],
                &[119, 118, 173, 171],
                &[118, 173, 171, 13],
                &[173, 171, 13, 3],
                &[171, 3, 195, 119],
                &[119, 173, 171, 3],
                &[3, 185, 119, 173],
                &[173, 13, 3, 185],
                &[185, 118, 173, 13],
                &[13, 195, 185, 118],
                &[118, 171, 13, 195],
                &[195, 119, 118, 171],
            ],
        },
        ReferenceCavity {
            order: 3,
            generator: &[227, 195, 119, 118],
            nodes: &[173, 13, 3, 227, 195, 119, 118, 185],
            cliques: &[
                &[173, 13, 3, 227],
                &[13, 3, 227, 195],
                &[3, 227, 195, 119],
                &[227, 195, 119, 118],
                &[195, 119, 118, 185],
                &[119, 118, 185, 173],
                &[118, 185, 173, 13],
                &[185, 173, 13, 3],
                &[173, 3, 227, 119],
                &[119, 185, 173, 3],
                &[3, 195, 119, 185],
                &[185, 13, 3, 195],
                &[195, 118, 185, 13],
                &[13, 227, 195, 118],
                &[118, 173, 13, 227],
                &[227, 119, 118, 173],
            ],
        },
    ];

    pub const TWO_CAVITIES: [ReferenceCavity; 2] = [
        ReferenceCavity {
            order: 2,
            generator: &[65, 31, 39],
            nodes: &[65, 31, 39, 45, 27, 71, 60, 50],
            cliques: &[
                &[65, 31, 39],
                &[65, 39, 45],
                &[65, 45, 27],
                &[65, 27, 71],
                &[65, 71, 60],
                &[65, 60, 31],
                &[50, 31, 39],
                &[50, 39, 45],
                &[50, 45, 27],
                &[50, 27, 71],
                &[50, 71, 60],
                &[50, 60, 31],
            ],
        },
        ReferenceCavity {
            order: 2,
            generator: &[120, 131, 143],
            nodes: &[120, 131, 143, 192, 87, 115, 103, 133],
            cliques: &[
                &[120, 131, 143],
                &[120, 131, 87],
                &[120, 192, 87],
                &[120, 143, 192],
                &[103, 143, 192],
                &[103, 115, 143],
                &[103, 115, 133],
                &[103, 133, 192],
                &[87, 133, 192],
                &[87, 115, 133],
                &[87, 115, 131],
                &[115, 131, 143],
            ],
        },
    ];
}

/// External networks, by the file stem they are stored under in a data
/// directory (`<name>.edges`).
pub mod datasets {
    pub struct Dataset {
        pub name: &'static str,
        pub nodes: usize,
        pub edges: usize,
        /// Default download location, when one is known.
        pub url: Option<&'static str>,
    }

    pub const CELEGANS: Dataset = Dataset {
        name: "celegans",
        nodes: 297,
        edges: 2148,
        url: Some("https://nrvis.com/download/data/bio/bio-celegansneural.zip"),
    };
    pub const USAIR: Dataset = Dataset {
        name: "usair",
        nodes: 332,
        edges: 2126,
        url: None,
    };
    pub const JAZZ: Dataset = Dataset {
        name: "jazz",
        nodes: 198,
        edges: 2742,
        url: None,
    };
    pub const YEAST: Dataset = Dataset {
        name: "yeast",
        nodes: 2375,
        edges: 11693,
        url: None,
    };

    pub const ALL: [Dataset; 4] = [CELEGANS, USAIR, JAZZ, YEAST];

    pub fn by_name(name: &str) -> Option<&'static Dataset> {
        ALL.iter().find(|d| d.name.eq_ignore_ascii_case(name))
    }

    pub const DATA_DIR_VAR: &str = "NETCAVITY_DATA_DIR";
}
