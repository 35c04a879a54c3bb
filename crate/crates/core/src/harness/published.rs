//! Published rejection rates, as printed.
//!
//! Each row is `(H, n, l, rates)`; `l = None` marks the comparison with
//! asymptotic critical values. `rates` are, in order: `h = 0`, then
//! `(τ = 0.25, h = 0.5)`, `(τ = 0.25, h = 1)`, `(τ = 0.5, h = 0.5)`, `(τ = 0.5, h = 1)`.

pub(crate) type PublishedRow = (f64, usize, Option<usize>, [f64; 5]);

/// Column order of [`PublishedRow`] rates: `(h, τ)`.
pub(crate) const COLUMNS: [(f64, f64); 5] = [(0.0, 0.5), (0.5, 0.25), (1.0, 0.25), (0.5, 0.5), (1.0, 0.5)];

pub(crate) const TABLE2: &[PublishedRow] = &[
    (0.6, 300, Some(9), [0.041, 0.263, 0.700, 0.502, 0.952]),
    (0.6, 300, Some(17), [0.064, 0.313, 0.742, 0.570, 0.964]),
    (0.6, 300, Some(30), [0.070, 0.322, 0.705, 0.555, 0.943]),
    (0.6, 300, None, [0.044, 0.209, 0.521, 0.424, 0.861]),
    (0.6, 500, Some(12), [0.053, 0.396, 0.859, 0.697, 0.994]),
    (0.6, 500, Some(22), [0.060, 0.421, 0.861, 0.720, 0.995]),
    (0.6, 500, Some(41), [0.069, 0.411, 0.829, 0.697, 0.991]),
    (0.6, 500, None, [0.049, 0.303, 0.687, 0.577, 0.958]),
    (0.7, 300, Some(9), [0.057, 0.155, 0.412, 0.291, 0.759]),
    (0.7, 300, Some(17), [0.070, 0.171, 0.423, 0.313, 0.763]),
    (0.7, 300, Some(30), [0.077, 0.177, 0.403, 0.314, 0.737]),
    (0.7, 300, None, [0.053, 0.108, 0.268, 0.228, 0.611]),
    (0.7, 500, Some(12), [0.056, 0.183, 0.513, 0.382, 0.856]),
    (0.7, 500, Some(22), [0.059, 0.193, 0.508, 0.382, 0.854]),
    (0.7, 500, Some(41), [0.065, 0.192, 0.476, 0.387, 0.819]),
    (0.7, 500, None, [0.048, 0.133, 0.359, 0.302, 0.730]),
    (0.8, 300, Some(9), [0.070, 0.126, 0.251, 0.223, 0.526]),
    (0.8, 300, Some(17), [0.067, 0.117, 0.234, 0.208, 0.494]),
    (0.8, 300, Some(30), [0.073, 0.114, 0.218, 0.201, 0.466]),
    (0.8, 300, None, [0.048, 0.081, 0.144, 0.141, 0.362]),
    (0.8, 500, Some(12), [0.066, 0.121, 0.295, 0.217, 0.591]),
    (0.8, 500, Some(22), [0.068, 0.114, 0.278, 0.210, 0.567]),
    (0.8, 500, Some(41), [0.069, 0.119, 0.257, 0.205, 0.532]),
    (0.8, 500, None, [0.053, 0.085, 0.198, 0.163, 0.462]),
    (0.9, 300, Some(9), [0.093, 0.126, 0.208, 0.209, 0.462]),
    (0.9, 300, Some(17), [0.074, 0.097, 0.161, 0.169, 0.397]),
    (0.9, 300, Some(30), [0.073, 0.095, 0.145, 0.165, 0.367]),
    (0.9, 300, None, [0.057, 0.065, 0.106, 0.125, 0.308]),
    (0.9, 500, Some(12), [0.079, 0.105, 0.194, 0.185, 0.461]),
    (0.9, 500, Some(22), [0.067, 0.091, 0.166, 0.162, 0.416]),
    (0.9, 500, Some(41), [0.063, 0.087, 0.146, 0.152, 0.391]),
    (0.9, 500, None, [0.051, 0.068, 0.120, 0.128, 0.350]),
];

pub(crate) const TABLE3: &[PublishedRow] = &[
    (0.6, 300, Some(9), [0.041, 0.847, 0.977, 0.990, 1.000]),
    (0.6, 300, Some(17), [0.067, 0.871, 0.946, 0.990, 1.000]),
    (0.6, 300, Some(30), [0.070, 0.831, 0.946, 0.979, 1.000]),
    (0.6, 300, None, [0.056, 0.820, 0.912, 0.984, 0.999]),
    (0.6, 500, Some(12), [0.055, 0.947, 0.997, 0.999, 1.000]),
    (0.6, 500, Some(22), [0.066, 0.946, 0.994, 0.999, 1.000]),
    (0.6, 500, Some(41), [0.071, 0.921, 0.976, 0.996, 1.000]),
    (0.6, 500, None, [0.061, 0.920, 0.970, 0.996, 1.000]),
    (0.7, 300, Some(9), [0.057, 0.571, 0.821, 0.990, 0.994]),
    (0.7, 300, Some(17), [0.064, 0.527, 0.738, 0.876, 0.990]),
    (0.7, 300, Some(30), [0.077, 0.527, 0.738, 0.842, 0.975]),
    (0.7, 300, None, [0.070, 0.529, 0.702, 0.856, 0.982]),
    (0.7, 500, Some(12), [0.066, 0.693, 0.904, 0.949, 0.999]),
    (0.7, 500, Some(22), [0.068, 0.684, 0.893, 0.942, 0.998]),
    (0.7, 500, Some(41), [0.072, 0.632, 0.838, 0.921, 0.994]),
    (0.7, 500, None, [0.076, 0.663, 0.820, 0.940, 0.995]),
    (0.8, 300, Some(9), [0.070, 0.355, 0.574, 0.703, 0.931]),
    (0.8, 300, Some(17), [0.068, 0.284, 0.454, 0.666, 0.905]),
    (0.8, 300, Some(30), [0.073, 0.284, 0.454, 0.633, 0.857]),
    (0.8, 300, None, [0.072, 0.297, 0.428, 0.640, 0.875]),
    (0.8, 500, Some(12), [0.064, 0.401, 0.609, 0.738, 0.948]),
    (0.8, 500, Some(22), [0.063, 0.379, 0.581, 0.714, 0.933]),
    (0.8, 500, Some(41), [0.064, 0.345, 0.509, 0.688, 0.903]),
    (0.8, 500, None, [0.069, 0.369, 0.510, 0.715, 0.920]),
    (0.9, 300, Some(9), [0.093, 0.253, 0.396, 0.597, 0.832]),
    (0.9, 300, Some(17), [0.071, 0.168, 0.254, 0.532, 0.772]),
    (0.9, 300, Some(30), [0.073, 0.168, 0.254, 0.482, 0.729]),
    (0.9, 300, None, [0.073, 0.165, 0.236, 0.499, 0.738]),
    (0.9, 500, Some(12), [0.073, 0.256, 0.405, 0.585, 0.839]),
    (0.9, 500, Some(22), [0.064, 0.219, 0.340, 0.547, 0.802]),
    (0.9, 500, Some(41), [0.065, 0.190, 0.296, 0.503, 0.762]),
    (0.9, 500, None, [0.068, 0.199, 0.296, 0.529, 0.782]),
];

pub(crate) const TABLE4: &[PublishedRow] = &[
    (0.6, 300, Some(9), [0.066, 0.20, 0.232, 0.386, 0.591]),
    (0.6, 300, Some(17), [0.054, 0.223, 0.411, 0.439, 0.784]),
    (0.6, 300, Some(30), [0.059, 0.264, 0.529, 0.663, 0.870]),
    (0.6, 300, None, [0.026, 0.096, 0.160, 0.223, 0.727]),
    (0.6, 500, Some(12), [0.063, 0.285, 0.436, 0.569, 0.856]),
    (0.6, 500, Some(22), [0.058, 0.345, 0.663, 0.627, 0.952]),
    (0.6, 500, Some(41), [0.062, 0.397, 0.789, 0.683, 0.975]),
    (0.6, 500, None, [0.036, 0.148, 0.256, 0.378, 0.897]),
    (0.7, 300, Some(9), [0.052, 0.080, 0.088, 0.162, 0.302]),
    (0.7, 300, Some(17), [0.049, 0.095, 0.158, 0.206, 0.466]),
    (0.7, 300, Some(30), [0.051, 0.120, 0.227, 0.267, 0.593]),
    (0.7, 300, None, [0.035, 0.067, 0.228, 0.167, 0.665]),
    (0.7, 500, Some(12), [0.042, 0.104, 0.153, 0.249, 0.539]),
    (0.7, 500, Some(22), [0.039, 0.131, 0.267, 0.287, 0.689]),
    (0.7, 500, Some(41), [0.046, 0.160, 0.373, 0.343, 0.789]),
    (0.7, 500, None, [0.030, 0.079, 0.259, 0.225, 0.714]),
    (0.8, 300, Some(9), [0.028, 0.030, 0.031, 0.054, 0.092]),
    (0.8, 300, Some(17), [0.029, 0.038, 0.048, 0.075, 0.179]),
    (0.8, 300, Some(30), [0.034, 0.057, 0.088, 0.070, 0.272]),
    (0.8, 300, None, [0.077, 0.153, 0.421, 0.245, 0.673]),
    (0.8, 500, Some(12), [0.023, 0.031, 0.036, 0.064, 0.162]),
    (0.8, 500, Some(22), [0.028, 0.044, 0.070, 0.097, 0.273]),
    (0.8, 500, Some(41), [0.039, 0.071, 0.129, 0.137, 0.391]),
    (0.8, 500, None, [0.050, 0.112, 0.439, 0.226, 0.714]),
    (0.9, 300, Some(9), [0.009, 0.010, 0.006, 0.016, 0.020]),
    (0.9, 300, Some(17), [0.009, 0.014, 0.009, 0.021, 0.060]),
    (0.9, 300, Some(30), [0.015, 0.029, 0.028, 0.011, 0.153]),
    (0.9, 300, None, [0.36, 0.484, 0.739, 0.524, 0.830]),
    (0.9, 500, Some(12), [0.008, 0.006, 0.003, 0.015, 0.026]),
    (0.9, 500, Some(22), [0.011, 0.009, 0.011, 0.029, 0.086]),
    (0.9, 500, Some(41), [0.021, 0.021, 0.032, 0.058, 0.197]),
    (0.9, 500, None, [0.319, 0.439, 0.743, 0.511, 0.845]),
];

pub(crate) const TABLE5: &[PublishedRow] = &[
    (0.6, 300, Some(9), [0.170, 0.949, 0.742, 0.991, 0.923]),
    (0.6, 300, Some(17), [0.130, 0.963, 0.861, 0.996, 0.991]),
    (0.6, 300, Some(30), [0.109, 0.962, 0.871, 0.998, 0.998]),
    (0.6, 300, None, [0.108, 0.938, 0.985, 0.998, 1.000]),
    (0.6, 500, Some(12), [0.163, 0.991, 0.916, 1.000, 0.993]),
    (0.6, 500, Some(22), [0.132, 0.997, 0.976, 1.000, 0.999]),
    (0.6, 500, Some(41), [0.114, 0.997, 0.989, 1.000, 1.000]),
    (0.6, 500, None, [0.128, 0.988, 0.999, 1.000, 1.000]),
    (0.7, 300, Some(9), [0.224, 0.785, 0.568, 0.939, 0.796]),
    (0.7, 300, Some(17), [0.175, 0.802, 0.680, 0.955, 0.949]),
    (0.7, 300, Some(30), [0.140, 0.789, 0.708, 0.959, 0.976]),
    (0.7, 300, None, [0.179, 0.833, 0.969, 0.974, 0.999]),
    (0.7, 500, Some(12), [0.208, 0.921, 0.763, 0.989, 0.956]),
    (0.7, 500, Some(22), [0.167, 0.931, 0.862, 0.992, 0.996]),
    (0.7, 500, Some(41), [0.143, 0.925, 0.891, 0.994, 0.998]),
    (0.7, 500, None, [0.191, 0.940, 0.994, 0.996, 1.000]),
    (0.8, 300, Some(9), [0.203, 0.508, 0.326, 0.743, 0.565]),
    (0.8, 300, Some(17), [0.160, 0.496, 0.347, 0.776, 0.808]),
    (0.8, 300, Some(30), [0.137, 0.484, 0.364, 0.791, 0.881]),
    (0.8, 300, None, [0.204, 0.729, 0.925, 0.918, 0.993]),
    (0.8, 500, Some(12), [0.190, 0.639, 0.445, 0.865, 0.770]),
    (0.8, 500, Some(22), [0.160, 0.649, 0.513, 0.886, 0.929]),
    (0.8, 500, Some(41), [0.137, 0.626, 0.556, 0.890, 0.961]),
    (0.8, 500, None, [0.212, 0.805, 0.963, 0.948, 0.999]),
    (0.9, 300, Some(9), [0.128, 0.150, 0.077, 0.320, 0.336]),
    (0.9, 300, Some(17), [0.097, 0.128, 0.071, 0.403, 0.550]),
    (0.9, 300, Some(30), [0.092, 0.125, 0.077, 0.481, 0.677]),
    (0.9, 300, None, [0.309, 0.712, 0.901, 0.848, 0.966]),
    (0.9, 500, Some(12), [0.112, 0.159, 0.089, 0.402, 0.436]),
    (0.9, 500, Some(22), [0.100, 0.161, 0.101, 0.518, 0.680]),
    (0.9, 500, Some(41), [0.095, 0.170, 0.106, 0.571, 0.771]),
    (0.9, 500, None, [0.27, 0.726, 0.911, 0.851, 0.975]),
];
