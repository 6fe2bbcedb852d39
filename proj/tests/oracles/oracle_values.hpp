#pragma once

// Generated by tests/oracles/gen_oracles.py; do not edit.

#include <array>

namespace oracle {

struct LogBetaCase { double a, b, value; };
inline constexpr std::array<LogBetaCase, 10> kLogBeta{{
    {11.3, 22.41, -21.581224620727095945},
    {1e-06, 1e-06, 14.508657738522574527},
    {1e-06, 1000000.0, 13.81549616523937375},
    {1000000.0, 1000000.0, -1386300.0033629211163},
    {0.5, 100000.0, -5.1840965395604141282},
    {3.7, 0.0001, 9.21016594172985267},
    {123.456, 0.789, -3.6362445208651992283},
    {250000.0, 750000.0, -562340.29644697623081},
    {0.001, 0.001, 7.6009008170083473785},
    {17.0, 17.0, -23.710746805420171806},
}};

struct DigammaCase { double x, value; };
inline constexpr std::array<DigammaCase, 10> kDigamma{{
    {1e-06, -1000000.5772140200139},
    {0.038, -26.832176109424627539},
    {0.5, -1.9635100260214234794},
    {1.0, -0.57721566490153286061},
    {2.75, 0.81890102497543259228},
    {9.99, 2.250700372831201122},
    {10.0, 2.2517525890667211076},
    {36.88, 3.5940506510053471074},
    {1234.5, 7.1180162318279978433},
    {1000000.0, 13.815510057964190771},
}};

inline constexpr double kLogPmf_90_11_30_22_41_30 = -3.0755604321929149906;

struct PmfCase { int n; double a, b; int x; double value; };
inline constexpr std::array<PmfCase, 100> kPmfSpots{{
    {156, 540.3437763471518, 0.2307254758371931, 38, -234.54905358607638536},
    {94, 106.58683419240079, 1135.080011586671, 42, -40.747648038993607019},
    {5, 0.04180339682952967, 55.71781023016962, 4, -15.957752212274248981},
    {32, 1125.5677962700195, 0.7068612173775699, 19, -50.438189753970098783},
    {175, 16.297732704106423, 0.018695485812748325, 7, -47.870089097695651568},
    {52, 0.1936136391503001, 0.04409508397301209, 19, -6.0222972029890303871},
    {107, 0.6370987417190394, 534.1803872925456, 59, -124.85188195771282958},
    {160, 62.39474524527166, 44.157622030975155, 105, -3.8356461352172545084},
    {64, 979.318090359885, 0.0024568028036218333, 33, -104.29423332599861603},
    {95, 0.0895397585176716, 0.03974540712082554, 27, -6.6758532160857727233},
    {137, 0.011417431837133028, 1.001154754121317, 14, -7.1382660930083709225},
    {171, 916.4383764486155, 0.0016280256264461271, 132, -86.198941048192924717},
    {104, 0.3383771526534719, 45.52593921999393, 91, -63.760364425106215552},
    {113, 0.20802032049670388, 1421.2510915821588, 14, -40.882915543905169413},
    {145, 16.71567954111569, 61.3785078832301, 15, -5.0292099933347738782},
    {170, 5822.583238007597, 0.10824472376253394, 83, -342.58453406941895105},
    {180, 0.028782588340600147, 4.467422663011362, 2, -4.3612735776425431695},
    {86, 722.5036646265579, 0.0013235342907321826, 30, -157.99285431517115658},
    {64, 735.4099194272353, 0.4036608094445486, 54, -28.127785272479268163},
    {179, 0.002084754228053078, 232.65238230268224, 19, -25.455538321485353503},
    {191, 0.058872611594936335, 592.7114732524373, 67, -111.58694108129845586},
    {3, 23.467248125490794, 1.5023698865279285, 1, -4.1907980325737877568},
    {23, 0.046705170204413345, 4378.867051500355, 11, -65.980050183276052152},
    {113, 1.8673536813040224, 0.002183707650224215, 36, -11.446489899466531463},
    {57, 0.012773646067626187, 1956.216140282824, 39, -164.27208614519154186},
    {178, 0.7620150577552436, 0.019483672681303688, 159, -6.9091104512157333278},
    {15, 156.1576247323288, 584.7767864146456, 1, -2.1489089100326307762},
    {181, 1.3106118070641628, 200.44327489633199, 85, -76.129244525488694813},
    {173, 72.23005255523853, 0.0031552170942136253, 95, -43.903130521981984954},
    {107, 0.004839126831198796, 74.06038682924954, 0, -0.0043452102393327811826},
    {93, 92.50843798492649, 0.014789108255858588, 41, -53.77737586787960559},
    {38, 2637.9621601921544, 0.7083829484251786, 38, -0.010132055524022818054},
    {20, 0.26720586348021164, 0.16920832162319857, 8, -4.1224936677921102037},
    {21, 22.59959010960538, 0.001943888069562586, 18, -9.5390614580661549177},
    {122, 6.013715452638825, 109.42478019855989, 38, -18.02532405902775867},
    {63, 0.8046952907077983, 6.277602629620817, 11, -3.5269051905617610064},
    {78, 1214.460139438061, 3.9838322121181395, 22, -173.40143989045148905},
    {187, 1.1188963674636412, 0.3991695828977642, 49, -6.0705488386538451066},
    {199, 9802.82055736446, 354.8960319379919, 118, -136.98088782732794727},
    {191, 0.0015227974378888673, 0.001131776509307937, 93, -11.206850758785489005},
    {147, 0.008672722667899051, 15.793606089841965, 60, -16.079763887297947436},
    {135, 1.5077943122019692, 0.9682801300004789, 5, -6.1501673215912784942},
    {160, 0.0026930898059328444, 108.19997314198741, 157, -175.62969048790209715},
    {141, 978.4760910075782, 1.1870619469322432, 7, -379.85568204274718764},
    {9, 3098.7835046698383, 0.0900789127806467, 6, -21.276125546548253791},
    {168, 0.09776620851207618, 320.92659164608045, 114, -165.91947141035873669},
    {73, 0.019353870026127585, 383.45431940304184, 48, -113.72324993240186582},
    {11, 434.3630340384669, 0.014353974811683599, 1, -49.868336244033911225},
    {2, 215.49513579824048, 3740.0169041691634, 0, -0.11202529325080944508},
    {74, 0.005470880458269466, 542.5817622943378, 41, -108.34374960103347301},
    {128, 0.3926206293569223, 0.257563455019206, 64, -5.6658916089007742745},
    {96, 0.03351309041034774, 3331.6972361087237, 73, -307.15282237010939894},
    {90, 64.9076253501705, 19.990527825801607, 1, -65.529148712395802128},
    {124, 824.2389535234018, 0.16718740072797703, 114, -24.319116157393491601},
    {18, 59.143548986471075, 6158.274770825433, 12, -45.062333815509430514},
    {188, 1.0773128843098472, 0.0706859409264412, 74, -7.4852121065102694968},
    {73, 0.014693620228514668, 5.505339326433611, 61, -15.690010931027372306},
    {119, 11.82993975271686, 325.28533073461733, 45, -44.657142702025034352},
    {83, 787.478663384458, 29.11266711034495, 78, -2.3299126889141452126},
    {80, 0.001177378395254425, 33.422431271767906, 15, -14.976617253459822142},
    {19, 1167.5654907611956, 0.0010638022792903224, 0, -104.78329719199642183},
    {178, 8626.170495746806, 0.8660234792741804, 2, -850.45279378501907822},
    {78, 9751.739452830854, 20.35114503804191, 68, -32.165818973194077254},
    {70, 86.8981426599217, 0.004321511743233968, 3, -102.49566923379508521},
    {178, 0.00711439281584066, 1.4768420738986736, 19, -7.9556153088012181193},
    {91, 0.008623928601858387, 140.88249323314164, 60, -82.329449430871657825},
    {82, 135.1179042464946, 14.927908835149145, 82, -6.8053676014537568616},
    {20, 2.9359389992115497, 0.11274569000372062, 3, -7.9409119361790499464},
    {104, 1.3154642944507073, 92.7234887600402, 101, -120.00696166742669393},
    {138, 0.22927056224441092, 356.0232979471486, 19, -28.868797410514306151},
    {128, 997.5714624013975, 0.3447464448695387, 24, -288.11596826603813244},
    {148, 12.861514794445448, 11.437552076279507, 1, -26.799221588614902166},
    {90, 0.026162764023029823, 1.7363775549248381, 84, -9.956950641980673671},
    {88, 0.267207599842832, 4.63242230251876, 69, -10.391206540221032773},
    {82, 0.012261245432126765, 25.722693692211596, 59, -32.925871289390785289},
    {116, 7.5827096990208585, 1058.6129155586054, 24, -44.475215348207834008},
    {114, 0.2855265107860378, 0.01552937618921992, 30, -7.6962741679526227263},
    {123, 0.008794781154628763, 0.11820074845730698, 109, -7.5832909204706185797},
    {3, 49.32093734484585, 0.012330497651933087, 0, -15.439734945834423228},
    {150, 455.41562178817054, 5176.352942981755, 117, -208.63729658457029184},
    {10, 2.2714336199810283, 146.6518373523781, 0, -0.14921011575054061897},
    {164, 6571.512373056634, 118.2631592046407, 56, -297.53728700677766446},
    {66, 0.021184378441839076, 45.94993973949455, 61, -65.655711742792578854},
    {23, 0.12349207682196911, 0.24718644752683933, 21, -3.7197861415828178344},
    {137, 1.26895437031556, 30.858588993384082, 45, -11.510108510805280002},
    {55, 0.006881230628145583, 849.1891242442153, 16, -54.794779568922559769},
    {95, 12.859582828276887, 0.02156800440784208, 41, -16.812987634724094485},
    {154, 0.002821381016041786, 3374.5288491583483, 141, -557.12920264553882225},
    {82, 29.269410024766124, 0.008439643708984269, 14, -44.490055549989835859},
    {163, 0.24642628717205356, 0.008706603563612327, 54, -8.638911148439762368},
    {115, 0.40567654938999553, 682.9195131777627, 6, -13.659102908190724502},
    {115, 8.225509173649955, 183.59262041997908, 97, -116.81173967500135131},
    {85, 0.009927010937840399, 0.06801522091252678, 24, -7.6293805156114630779},
    {40, 192.06513759389844, 2916.4508663687316, 25, -44.854995043212473267},
    {136, 5892.982740536401, 0.09509207840117152, 107, -118.4611652990821936},
    {86, 0.00343901829841659, 0.002724969882151897, 74, -8.8294307592477976752},
    {177, 0.0016525322190114025, 5136.610364181493, 137, -552.3461687272365853},
    {143, 70.7606435343919, 126.80504377913888, 111, -33.220352530161911615},
    {162, 184.35236373298937, 0.001692319997683365, 0, -247.03336650491594593},
    {107, 1868.122699503314, 0.0013105180665975201, 95, -44.705652791079864915},
}};

// Cubic clamped uniform basis, 8 functions, at p = 0.37.
inline constexpr std::array<double, 8> kSpline8At037{
    0.0, 0.00084375, 0.25094791666666666667, 0.64585416666666666667, 0.10235416666666666667, 0.0, 0.0, 0.0};

// tests/data/oracle100.tsv under EB1 (0.038, 36.88).
inline constexpr double kOracle100NegLogLik = 977.4318608048555361;

// E[q (1 - q)] / 30 for the default simulation (marginal Beta(0.198, 0.198), EB1 0.038 / 36.88).
inline constexpr double kMleMseDefaultSim = 0.0023254977679045838256;

}  // namespace oracle
