#![allow(clippy::excessive_precision)]
// Frozen extended-precision oracle values; regenerate with gen_certificate_oracles.py.

// (nu, l, a, b, j_l1, T, kappa)
pub const KAPPA_SWEEP: [[f64; 7]; 50] = [
    [0.1, 1.0, 1.0, 1.0, 1.0, 0.1, 0.14940102155107348089],
    [
        0.443526,
        1.12182,
        1.327877,
        -0.538741,
        1.192872,
        0.523397,
        2.4217406102396843274,
    ],
    [
        2.137153,
        1.907157,
        1.052728,
        0.180983,
        0.221751,
        2.180682,
        202.07671475666492188,
    ],
    [
        2.444277,
        1.255596,
        1.531177,
        0.859047,
        0.25522,
        0.010679,
        4.3421729562300064812,
    ],
    [
        2.683155,
        0.94472,
        1.126781,
        0.98612,
        3.810479,
        1.079869,
        78.050332812498577501,
    ],
    [
        1.213478,
        0.241895,
        1.273366,
        -0.91656,
        2.008417,
        0.695195,
        3.0065328088961730814,
    ],
    [
        2.130701,
        0.95039,
        1.11194,
        -1.117914,
        3.038731,
        2.29282,
        446.80004700797009403,
    ],
    [
        0.793415,
        1.714185,
        1.07867,
        1.719409,
        3.553438,
        2.282074,
        328.86971246896439315,
    ],
    [
        1.237951,
        0.949181,
        0.569486,
        -2.179298,
        0.49652,
        2.287326,
        46.474261863549554011,
    ],
    [
        1.910269,
        1.257903,
        0.929711,
        0.58711,
        2.513225,
        2.649501,
        432.62642316147917442,
    ],
    [
        1.004228,
        0.183794,
        0.125897,
        2.804094,
        0.271191,
        2.144317,
        2.4177534993753151269,
    ],
    [
        2.092237,
        1.592093,
        0.255737,
        2.558284,
        0.470832,
        0.554997,
        11.166873336079109463,
    ],
    [
        1.868305,
        0.63485,
        0.880503,
        -2.247905,
        2.943286,
        1.792134,
        89.048043973837071519,
    ],
    [
        1.845684,
        0.416647,
        0.94721,
        0.890286,
        0.11174,
        1.466526,
        13.30996641233402038,
    ],
    [
        0.238469,
        1.579372,
        0.080589,
        2.431175,
        2.724256,
        0.929909,
        2.8704658361917231645,
    ],
    [
        2.874082,
        1.995533,
        1.831208,
        -0.131912,
        3.724194,
        1.210713,
        516.73287830828535684,
    ],
    [
        2.916174,
        1.292602,
        0.625149,
        1.482104,
        3.39371,
        0.732221,
        34.628827664442306894,
    ],
    [
        2.533786,
        1.952202,
        0.700774,
        -2.862713,
        0.257356,
        2.589931,
        432.36650759115860024,
    ],
    [
        1.604749,
        0.480013,
        0.081975,
        0.446452,
        0.92119,
        0.552972,
        1.490061574429654452,
    ],
    [
        2.004212,
        1.874433,
        0.399152,
        -2.508856,
        2.766111,
        0.588003,
        23.204665048140754403,
    ],
    [
        0.093629,
        0.516279,
        0.366887,
        1.212396,
        2.228939,
        2.768264,
        2.0250438874052776212,
    ],
    [
        1.356575,
        0.132871,
        1.217477,
        -2.169498,
        3.700026,
        2.479469,
        92.122582499139278975,
    ],
    [
        2.137848,
        1.724674,
        0.415713,
        -2.376293,
        1.700489,
        0.583079,
        18.37504931867020348,
    ],
    [
        1.218122,
        0.218197,
        1.693853,
        -2.025025,
        2.637915,
        1.994394,
        140.57678530354695918,
    ],
    [
        2.373998,
        1.306785,
        0.353073,
        -1.962173,
        1.059355,
        1.101062,
        24.958275042983207838,
    ],
    [
        1.700935,
        0.748938,
        1.273766,
        0.411014,
        2.182831,
        0.932275,
        21.726912911505603771,
    ],
    [
        1.437188,
        1.230804,
        0.503361,
        0.826895,
        3.673563,
        1.250045,
        29.754124696046428483,
    ],
    [
        0.480153,
        0.046235,
        1.897723,
        0.243947,
        1.389448,
        1.480834,
        2.7816932347733289413,
    ],
    [
        1.406161,
        0.203777,
        1.0133,
        2.788482,
        1.708294,
        1.770456,
        23.970804230449329915,
    ],
    [
        0.934227,
        1.812354,
        0.074306,
        2.614069,
        1.564358,
        2.791418,
        35.538102497348426027,
    ],
    [
        1.891163,
        1.682695,
        0.070849,
        -2.824327,
        2.614694,
        0.52292,
        14.293332650528392762,
    ],
    [
        0.895779,
        1.779126,
        1.250631,
        1.791592,
        0.506961,
        2.397646,
        392.24593766805137692,
    ],
    [
        2.194039,
        0.508713,
        0.696535,
        -1.080182,
        1.438708,
        1.197619,
        14.419287189643440053,
    ],
    [
        0.071506,
        0.73284,
        1.067765,
        0.464023,
        2.42079,
        0.123573,
        0.085161686162656705158,
    ],
    [
        1.212946,
        0.854055,
        0.981245,
        0.413001,
        3.110233,
        1.155139,
        24.014776846840878733,
    ],
    [
        2.79162,
        0.722652,
        1.547031,
        -0.504534,
        3.391378,
        2.998537,
        4856.1958277557837185,
    ],
    [
        0.864531,
        1.857219,
        1.959203,
        -1.135554,
        3.74424,
        0.834772,
        66.920854199043586855,
    ],
    [
        0.565543,
        1.222316,
        0.844289,
        -1.405214,
        0.741432,
        0.636075,
        3.4127992842704683491,
    ],
    [
        2.401904,
        1.059955,
        1.037048,
        0.156363,
        2.889069,
        1.915105,
        208.20510484028634543,
    ],
    [
        1.233255,
        0.040517,
        1.854615,
        1.179162,
        1.536852,
        1.130693,
        3.0095199153820927389,
    ],
    [
        1.594872,
        0.584468,
        1.673777,
        -0.898676,
        1.561008,
        2.864769,
        1914.714086337012111,
    ],
    [
        2.408314,
        0.722785,
        1.458579,
        -2.708361,
        1.307427,
        0.243618,
        5.3258144197742383277,
    ],
    [
        1.320361,
        0.922207,
        0.111467,
        0.268611,
        0.2249,
        2.634233,
        5.9180822043594411152,
    ],
    [
        0.133989,
        0.271447,
        1.560871,
        -0.677437,
        0.494406,
        0.808129,
        0.41740003902542913251,
    ],
    [
        2.340952,
        0.620592,
        0.338041,
        1.857888,
        3.108234,
        0.561203,
        7.7365339192896662916,
    ],
    [
        2.907036,
        0.497305,
        1.904904,
        -0.786597,
        0.972309,
        1.337514,
        130.4143037908213476,
    ],
    [
        2.920264,
        0.835428,
        1.993411,
        0.198358,
        1.423588,
        2.757568,
        8550.2221427864553711,
    ],
    [
        2.972344,
        1.842165,
        0.875633,
        -1.996059,
        1.684686,
        1.338551,
        154.50368764617096703,
    ],
    [
        0.659712,
        0.479779,
        0.481235,
        0.778513,
        3.759022,
        0.852073,
        2.9471498845870664189,
    ],
    [
        2.191616,
        1.409736,
        0.025687,
        -0.474885,
        0.994907,
        0.856509,
        7.6903022160254392562,
    ],
];
// (||G||_1, ||G''||_1, nu)
pub const NU_SWEEP: [[f64; 3]; 50] = [
    [3.0, 4.0, 5.0],
    [2.73527, 7.83157, 8.2954921877969362596],
    [2.646036, 2.051272, 3.3480178212309444038],
    [4.719866, 4.308277, 6.3904918251011791745],
    [2.564102, 7.633655, 8.0527826076101793647],
    [2.322357, 9.613594, 9.8901229331229750898],
    [3.476436, 5.671145, 6.6518788979596584354],
    [1.052927, 5.771292, 5.8665549189105014292],
    [2.399009, 2.285899, 3.3136955835263443825],
    [9.212231, 9.996966, 13.594282960219601079],
    [8.94707, 2.524088, 9.2962939829075973559],
    [6.394284, 2.01868, 6.7053662700150839709],
    [6.929339, 5.46037, 8.8222094462680379055],
    [5.862613, 2.719671, 6.4627270974419150387],
    [1.961897, 6.256559, 6.556948250450814714],
    [8.577427, 5.242888, 10.052866681741730927],
    [8.743306, 7.928524, 11.802834093056294418],
    [0.073658, 9.916051, 9.9163245678812369135],
    [8.188094, 0.880326, 8.2352812471167006283],
    [8.025046, 0.678758, 8.0536995054869038738],
    [5.531634, 6.992172, 8.9156852786277735455],
    [8.045697, 8.437415, 11.658611070707951187],
    [7.162646, 6.31299, 9.5476353334957237463],
    [2.110994, 7.362789, 7.6594358491051415033],
    [8.76245, 2.57505, 9.1329848628474141362],
    [3.152172, 8.230175, 8.8131701928539312647],
    [2.743786, 6.251749, 6.8273514024691156218],
    [6.374017, 3.1366, 7.1039673617133827595],
    [2.927484, 1.219589, 3.1713656205453511222],
    [8.640146, 6.621779, 10.885774204261128252],
    [5.701934, 9.586511, 11.154068517517587851],
    [0.325452, 0.640732, 0.7186490799604491249],
    [6.138608, 2.142234, 6.5016670699459842459],
    [6.069329, 6.866047, 9.1640250936174329094],
    [1.821588, 9.397066, 9.5719920732363751786],
    [2.457576, 6.301834, 6.7640809840902999053],
    [0.284315, 2.208737, 2.2269607437927593608],
    [4.336744, 4.303822, 6.109847160872356879],
    [5.698946, 4.445396, 7.2276919627037233054],
    [8.147527, 6.153263, 10.210036325248701092],
    [6.848539, 0.418265, 6.8612995886162848705],
    [2.854265, 6.241629, 6.8632908479727128638],
    [4.122627, 0.163171, 4.1258548394690281444],
    [6.931006, 7.228559, 10.01453490625086393],
    [7.027581, 3.046581, 7.6595398361208357906],
    [4.795272, 3.657313, 6.0308019312486958843],
    [8.131769, 1.000763, 8.1931186767634459794],
    [7.644748, 6.908484, 10.303849919411675903],
    [0.807672, 7.471362, 7.5148908305196290456],
    [0.572987, 0.668401, 0.88038287067048277504],
];
