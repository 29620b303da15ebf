//! Bundled example graphs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FactorBuilder, MethodDependencyMatrix};
use crate::graph::{AdapterSpec, InterfaceAdapterGraph, InterfaceSpec};
use crate::random::{random_factor, FactorParams};
use crate::reduction::{DiscreteAdapterGraph, DiscreteAdapterSpec};

/// Four video playback interfaces. `Video4` splits playback into choosing
/// a file and starting playback; the others expose one method each.
pub fn video_interfaces() -> Vec<InterfaceSpec> {
    vec![
        InterfaceSpec::new("Video1", ["playFile"]),
        InterfaceSpec::new("Video2", ["play"]),
        InterfaceSpec::new("Video3", ["playVideo"]),
        InterfaceSpec::new("Video4", ["selectVideo", "startPlayback"]),
    ]
}

/// Two routes from `Video1` to `Video3`: `[A1, A2]` through `Video2`, where
/// each hop keeps 4 of 6 formats, and `[A3, A4]` through `Video4`, where
/// only the final hop loses (5 of 6 formats).
pub fn video_graph() -> InterfaceAdapterGraph {
    let a1 = FactorBuilder::new(2, 2).depends(1, 1, 4.0 / 6.0).build();
    let a2 = FactorBuilder::new(2, 2).depends(1, 1, 4.0 / 6.0).build();
    let a3 = FactorBuilder::new(3, 2)
        .depends(1, 1, 1.0)
        .depends(2, 1, 1.0)
        .build();
    let a4 = FactorBuilder::new(2, 3)
        .depends(1, 1, 5.0 / 6.0)
        .depends(1, 2, 1.0)
        .build();
    InterfaceAdapterGraph::new(
        video_interfaces(),
        vec![
            AdapterSpec::new("A1", "Video1", "Video2", a1),
            AdapterSpec::new("A2", "Video2", "Video3", a2),
            AdapterSpec::new("A3", "Video1", "Video4", a3),
            AdapterSpec::new("A4", "Video4", "Video3", a4),
        ],
    )
    .expect("video graph is valid")
}

/// The same topology with dependency matrices only.
pub fn video_discrete_graph() -> DiscreteAdapterGraph {
    let adapters = video_graph()
        .adapters()
        .iter()
        .map(|a| {
            let dep: MethodDependencyMatrix = a.factor.dep().clone();
            DiscreteAdapterSpec::new(&a.name, &a.source, &a.target, dep)
        })
        .collect();
    DiscreteAdapterGraph::new(video_interfaces(), adapters).expect("video graph is valid")
}

#[derive(Debug, Clone)]
pub struct Ladder {
    pub graph: InterfaceAdapterGraph,
    pub source: String,
    pub target: String,
}

/// Two rails `L0..L{n-1}` and `R0..R{n-1}` with both rungs at every level
/// (`Li <-> Ri`) and all four forward edges between consecutive levels.
/// The number of acyclic `L0 -> R{n-1}` chains grows exponentially in `n`.
/// Interfaces carry two methods; factors are drawn from `seed`.
pub fn diamond_ladder(levels: usize, seed: u64) -> Ladder {
    assert!(levels >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = FactorParams {
        density: 0.6,
        never_rate: 0.0,
    };
    let mut interfaces = Vec::new();
    for rail in ["L", "R"] {
        for level in 0..levels {
            interfaces.push(InterfaceSpec::new(format!("{rail}{level}"), ["m1", "m2"]));
        }
    }
    let mut edges = Vec::new();
    for level in 0..levels {
        edges.push((format!("L{level}"), format!("R{level}")));
        edges.push((format!("R{level}"), format!("L{level}")));
        if level + 1 < levels {
            for from in ["L", "R"] {
                for to in ["L", "R"] {
                    edges.push((format!("{from}{level}"), format!("{to}{}", level + 1)));
                }
            }
        }
    }
    let adapters = edges
        .into_iter()
        .map(|(s, t)| {
            let f = random_factor(&mut rng, 3, 3, params);
            AdapterSpec::new(format!("{s}-{t}"), s, t, f)
        })
        .collect();
    Ladder {
        graph: InterfaceAdapterGraph::new(interfaces, adapters).expect("ladder is valid"),
        source: "L0".into(),
        target: format!("R{}", levels - 1),
    }
}
