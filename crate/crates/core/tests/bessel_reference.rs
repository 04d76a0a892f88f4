//! Bessel functions checked against 40-digit reference values.

use fibertorque::bessel::{bessel_i, bessel_j, bessel_k, bessel_y};

// (n, x, J_n(x), Y_n(x))
const JY: &[(i32, f64, f64, f64)] = &[
    (0, 1.000000e-03, 9.99999750000015625e-1, -4.4714166113759232557),
    (0, 1.000000e-01, 9.97501562066040032e-1, -1.5342386513503668083),
    (0, 5.000000e-01, 9.3846980724081290423e-1, -4.4451873350670655715e-1),
    (0, 1.000000e+00, 7.6519768655796655145e-1, 8.8256964215676957983e-2),
    (0, 2.500000e+00, -4.8383776468197996327e-2, 4.9807035961523188783e-1),
    (0, 4.100000e+00, -3.8866967983585371972e-1, -5.6094626606344482014e-2),
    (0, 7.300000e+00, 2.8821694763501439904e-1, 6.2773886374037597732e-2),
    (0, 1.200000e+01, 4.7689310796833536624e-2, -2.2523731263436143369e-1),
    (0, 2.500000e+01, 9.6266783275958116174e-2, -1.2724943226800613783e-1),
    (0, 6.000000e+01, -9.1471804089061869531e-2, 4.7358952209449399203e-2),
    (0, 1.500000e+02, -7.7409037539429124695e-4, -6.5142221509037354596e-2),
    (0, 1.000000e+03, 2.4786686152420174561e-2, 4.7159179776228133998e-3),
    (1, 1.000000e-03, 4.9999993750000261457e-4, -6.3662216723113941482e+2),
    (1, 1.000000e-01, 4.9937526036242000321e-2, -6.4589510947020266377),
    (1, 5.000000e-01, 2.4226845767487388638e-1, -1.4714723926702430692),
    (1, 1.000000e+00, 4.4005058574493351596e-1, -7.8121282130028871655e-1),
    (1, 2.500000e+00, 4.9709410246427403801e-1, 1.4591813796678579888e-1),
    (1, 4.100000e+00, -1.0327325774733857266e-1, 3.8459403481891659162e-1),
    (1, 7.300000e+00, 8.2570430493257831051e-2, -2.8459437186807210845e-1),
    (1, 1.200000e+01, -2.2344710449062761237e-1, -5.709921826089652105e-2),
    (1, 2.500000e+01, -1.2535024958028990465e-1, -9.8829964783237410053e-2),
    (1, 6.000000e+01, 4.6598383758166317869e-2, 9.1869609369866895264e-2),
    (1, 1.500000e+02, -6.5145163657727360305e-2, 5.569563495608399837e-4),
    (1, 1.000000e+03, 4.7283119070895239176e-3, -2.4784331292351778915e-2),
    (2, 1.000000e-03, 1.2499998958333366406e-7, -1.2732398630456674272e+6),
    (2, 1.000000e-01, 1.248958658799918984e-3, -1.2764478324269015877e+2),
    (2, 5.000000e-01, 3.0604023458682641307e-2, -5.4413708371742657196),
    (2, 1.000000e+00, 1.1490348493190048047e-1, -1.6506826068162543911),
    (2, 2.500000e+00, 4.4605905843961722674e-1, -3.8133584924180324872e-1),
    (2, 4.100000e+00, 3.3829248093471294821e-1, 2.4370147285947454297e-1),
    (2, 7.300000e+00, -2.6559491188343691053e-1, -1.4074494715981078003e-1),
    (2, 1.200000e+01, -8.4930494878604805352e-2, 2.1572077625754534685e-1),
    (2, 2.500000e+01, -1.0629480324238130855e-1, 1.1934303508534714503e-1),
    (2, 6.000000e+01, 9.302508354766741346e-2, -4.4296631897120502694e-2),
    (2, 1.500000e+02, -9.4511806708740223781e-5, 6.5149647593698165796e-2),
    (2, 1.000000e+03, -2.4777229528605995513e-2, -4.7654866402075169576e-3),
    (3, 1.000000e-03, 2.0833332031250033853e-11, -5.0929588155605023717e+9),
    (3, 1.000000e-01, 2.0820315754756264895e-5, -5.0993323786129040409e+3),
    (3, 5.000000e-01, 2.5637299945872440754e-3, -4.2059494304723882688e+1),
    (3, 1.000000e+00, 1.9563353982668405919e-2, -5.8215176059647288478),
    (3, 2.500000e+00, 2.1660039103911352477e-1, -7.5605549675367099684e-1),
    (3, 4.100000e+00, 4.3331470256169269706e-1, -1.4683650032186823642e-1),
    (3, 7.300000e+00, -2.2810188905952463488e-1, 2.0747385287639496683e-1),
    (3, 1.200000e+01, 1.9513693953109267725e-1, 1.2900614368007830333e-1),
    (3, 2.500000e+01, 1.0834308106150889528e-1, 1.1792485039689295326e-1),
    (3, 6.000000e+01, -4.0396711521655156971e-2, -9.4822718163008262111e-2),
    (3, 1.500000e+02, 6.5142643342881793899e-2, 1.1803675862711111042e-3),
    (3, 1.000000e+03, -4.8274208252039478996e-3, 2.4765269345790948847e-2),
    (5, 1.000000e-03, 2.6041665581597244309e-19, -2.4446200786802638374e+17),
    (5, 1.000000e-01, 2.6030817909644415564e-9, -2.4461484502303908563e+7),
    (5, 5.000000e-01, 8.053627241357474086e-6, -7.9463014788074733418e+3),
    (5, 1.000000e+00, 2.4975773021123443138e-4, -2.6040586662581222072e+2),
    (5, 2.500000e+00, 1.9501625134503219886e-2, -3.830176000740751863),
    (5, 4.100000e+00, 1.4390792375018519711e-1, -7.4796185335097187492e-1),
    (5, 7.300000e+00, 3.1370617089730907746e-1, 1.336454913195124951e-1),
    (5, 1.200000e+01, -7.3470963101658581266e-2, -2.2981794662508243345e-1),
    (5, 2.500000e+01, -6.6007995398422993392e-2, -1.4705799311372266086e-1),
    (5, 6.000000e+01, 2.745474422834409975e-2, 9.9464632840450885642e-2),
    (5, 1.500000e+02, -6.4998631740725846593e-2, -4.6524973404176349096e-3),
    (5, 1.000000e+03, 5.0254069452331860742e-3, -2.4725956719740690746e-2),
    (10, 1.000000e-03, 2.6911443943049993435e-40, -1.1828049377990414101e+38),
    (10, 1.000000e-01, 2.690532895434217073e-20, -1.1831335132045191318e+18),
    (10, 5.000000e-01, 2.6131773608228030862e-13, -1.2196362334956963053e+11),
    (10, 1.000000e+00, 2.630615123687453207e-10, -1.2161801427868918929e+8),
    (10, 2.500000e+00, 2.2247284173983832948e-6, -1.4782847716021067994e+4),
    (10, 4.100000e+00, 2.4496549433303121154e-4, -1.4269412119931289376e+2),
    (10, 7.300000e+00, 3.2111623954048501212e-2, -1.4951082616786337948),
    (10, 1.200000e+01, 3.0047603527126931073e-1, -2.2876314070499700888e-2),
    (10, 2.500000e+01, -7.5179843948523283841e-2, -1.4871839049980649757e-1),
    (10, 6.000000e+01, 9.7177143328071091839e-2, 3.6290350559545503861e-2),
    (10, 1.500000e+02, -2.0612788945218587404e-2, 6.1876355208120756986e-2),
    (10, 1.000000e+03, -2.4520622306036558192e-2, -5.9490005741626685808e-3),
    (20, 1.000000e-03, 3.9199043029592649358e-85, -4.0601742030076170278e+82),
    (20, 1.000000e-01, 3.9194377208586220087e-45, -4.0607084201263677101e+42),
    (20, 5.000000e-01, 3.7272019617047144607e-31, -4.2714301215659064361e+28),
    (20, 1.000000e+00, 3.8735030085246577189e-25, -4.1139703148355052801e+22),
    (20, 2.500000e+00, 3.3090793836587766837e-17, -4.8477655958209009576e+14),
    (20, 4.100000e+00, 5.7761978877861398893e-13, -2.8153170254844534823e+10),
    (20, 7.300000e+00, 3.8026628466865908758e-8, -4.4967102019076766037e+5),
    (20, 1.200000e+01, 2.5121327024539953203e-4, -7.9349697401970764105e+1),
    (20, 2.500000e+01, 5.199404922830323178e-2, 1.9804074776289243611e-1),
    (20, 6.000000e+01, 1.0266020557876329043e-1, -2.6721408520664669566e-2),
    (20, 1.500000e+02, 6.3447240953861972933e-2, -1.6024629052560344966e-2),
    (20, 1.000000e+03, 2.3357967932679334591e-2, 9.547376014987301682e-3),
    (40, 1.000000e-03, 1.1146925604908663666e-180, -7.1389613953993215433e+177),
    (40, 1.000000e-01, 1.114624600251642287e-100, -7.1394189904180964758e+97),
    (40, 5.000000e-01, 1.0122626959003594127e-72, -7.8619604848825331211e+69),
    (40, 1.000000e+00, 1.1079158511286326622e-60, -7.1848747968013842562e+57),
    (40, 2.500000e+00, 8.8755868405815496357e-45, -8.9834568915313739726e+41),
    (40, 4.100000e+00, 3.2654248780320504303e-36, -2.449883246660557505e+33),
    (40, 7.300000e+00, 2.7440929135097691845e-26, -2.9495238908966152266e+23),
    (40, 1.200000e+01, 6.7448821484690061239e-18, -1.2368347334808602987e+15),
    (40, 2.500000e+01, 1.674577415562266046e-6, -6.0912102591779882024e+3),
    (40, 6.000000e+01, -7.7646197404715064971e-2, -9.0545084909696293316e-2),
    (40, 1.500000e+02, -5.3178029743433989334e-2, -3.9694445431176134841e-2),
    (40, 1.000000e+03, 1.3889378035385042345e-2, 2.107640333192319449e-2),
];

// (n, x, I_n(x), K_n(x))
const IK: &[(i32, f64, f64, f64)] = &[
    (0, 1.000000e-03, 1.000000250000015625, 7.0236888005623813228),
    (0, 1.000000e-01, 1.0025015629340956017, 2.4270690247020165578),
    (0, 5.000000e-01, 1.0634833707413235193, 9.2441907122766586178e-1),
    (0, 1.000000e+00, 1.2660658777520083356, 4.2102443824070833334e-1),
    (0, 2.000000e+00, 2.2795853023360672674, 1.1389387274953343565e-1),
    (0, 3.500000e+00, 7.3782034322254796603, 1.9598897170368489108e-2),
    (0, 7.000000e+00, 1.6859390851028969886e+2, 4.2479574186923180685e-4),
    (0, 2.000000e+01, 4.3558282559553533272e+7, 5.7412378153365242927e-10),
    (0, 8.000000e+01, 2.4751784043341704887e+33, 2.5251198425054718152e-36),
    (0, 3.000000e+02, 4.4758473679350521181e+128, 3.7236948548891432633e-132),
    (1, 1.000000e-03, 5.0000006250000261458e-4, 9.9999623815608555346e+2),
    (1, 1.000000e-01, 5.00625260470926949e-2, 9.8538447808706055744),
    (1, 5.000000e-01, 2.5789430539089631636e-1, 1.6564411200033008937),
    (1, 1.000000e+00, 5.6515910399248502721e-1, 6.0190723019723457474e-1),
    (1, 2.000000e+00, 1.5906368546373290634, 1.3986588181652242728e-1),
    (1, 3.500000e+00, 6.2058349222583654736, 2.2239392925923833739e-2),
    (1, 7.000000e+00, 1.5603909286995545346e+2, 4.5418248688489697124e-4),
    (1, 2.000000e+01, 4.2454973385127770181e+7, 5.8830579695570381777e-10),
    (1, 8.000000e+01, 2.459659579567540863e+33, 2.5408531275211700109e-36),
    (1, 3.000000e+02, 4.4683813850369544139e+128, 3.7298958583323726986e-132),
    (2, 1.000000e-03, 1.2500001041666699739e-7, 1.9999995000009716277e+6),
    (2, 1.000000e-01, 1.251041992241759263e-3, 1.9950396464211411711e+2),
    (2, 5.000000e-01, 3.1906149177738253813e-2, 7.5501835512408694366),
    (2, 1.000000e+00, 1.3574766976703828118e-1, 1.6248388986351774828),
    (2, 2.000000e+00, 6.8894844769873820405e-1, 2.5375975456605586294e-1),
    (2, 3.500000e+00, 3.8320120480778422468, 3.2307121699467822672e-2),
    (2, 7.000000e+00, 1.2401131054744528358e+2, 5.5456216669348808435e-4),
    (2, 2.000000e+01, 3.9312785221040756254e+7, 6.3295436122922281105e-10),
    (2, 8.000000e+01, 2.4136869148449819671e+33, 2.5886411706935010655e-36),
    (2, 3.000000e+02, 4.446058158701472422e+128, 3.7485608272780257479e-132),
    (3, 1.000000e-03, 2.083333463541670052e-11, 7.9999990000001245002e+9),
    (3, 1.000000e-01, 2.0846357422327156111e-5, 7.9900124304654348468e+3),
    (3, 5.000000e-01, 2.6451119689902858564e-3, 6.2057909529930256386e+1),
    (3, 1.000000e+00, 2.2168424924331902476e-2, 7.101262824737944506),
    (3, 2.000000e+00, 2.1273995923985265527e-1, 6.4738539094863415316e-1),
    (3, 3.500000e+00, 1.8263925815979743344, 5.9161817725315631079e-2),
    (3, 7.000000e+00, 8.5175486842843862844e+1, 7.710751535668901623e-4),
    (3, 2.000000e+01, 3.4592416340919618931e+7, 7.1489666920154837997e-10),
    (3, 8.000000e+01, 2.3389752338252917647e+33, 2.6702851860558450642e-36),
    (3, 3.000000e+02, 4.4091006095876014482e+128, 3.7798766693627463752e-132),
    (5, 1.000000e-03, 2.6041667751736133198e-19, 3.8399997600000096003e+17),
    (5, 1.000000e-01, 2.6052519298936976131e-9, 3.837600999583591757e+7),
    (5, 5.000000e-01, 8.2231713131092639616e-6, 1.2097979476096393394e+4),
    (5, 1.000000e+00, 2.7146315595697187518e-4, 3.6096058960124070066e+2),
    (5, 2.000000e+00, 9.8256793231317023208e-3, 9.4310491005964674428),
    (5, 3.500000e+00, 2.2398495470190781504e-1, 3.6482440208451965774e-1),
    (5, 7.000000e+00, 2.6885486389773853372e+1, 2.1601994128739526218e-3),
    (5, 2.000000e+01, 2.3018392213413670701e+7, 1.05386601399742331e-9),
    (5, 8.000000e+01, 2.1151488565944832562e+33, 2.9491764420206140087e-36),
    (5, 3.000000e+02, 4.2928905790140089044e+128, 3.8818542256471538599e-132),
    (10, 1.000000e-03, 2.6911445166297473192e-40, 1.8579455483904004196e+38),
    (10, 1.000000e-01, 2.6917561429221430223e-20, 1.8574295846303999688e+18),
    (10, 5.000000e-01, 2.6430419258812795385e-13, 1.8893756931990025964e+11),
    (10, 1.000000e+00, 2.7529480398368736252e-10, 1.8071328990102945469e+8),
    (10, 2.000000e+00, 3.0169638793506843654e-7, 1.6248240397955914872e+5),
    (10, 3.500000e+00, 9.7760848514528929529e-5, 4.8253582096664728359e+2),
    (10, 7.000000e+00, 2.209800519276605704e-1, 1.8524358767168077531e-1),
    (10, 2.000000e+01, 3.5402002090195210991e+6, 6.3162145283215797623e-9),
    (10, 8.000000e+01, 1.3207418268325285571e+33, 4.6957285830490530253e-36),
    (10, 3.000000e+02, 3.7877259258668686766e+128, 4.397741124524511992e-132),
    (20, 1.000000e-03, 3.9199043962903208792e-85, 6.3777065563973764534e+82),
    (20, 1.000000e-01, 3.9203710314199778248e-45, 6.3768675266611785739e+42),
    (20, 5.000000e-01, 3.7494538480790195278e-31, 6.6655498744171556352e+28),
    (20, 1.000000e+00, 3.9668359858190200557e-25, 6.2943693604245351667e+22),
    (20, 2.000000e+00, 4.3105605761095483322e-19, 5.770856852700241005e+16),
    (20, 3.500000e+00, 3.449552884722293803e-14, 7.1385789792374046838e+11),
    (20, 7.000000e+00, 5.563200120475373614e-8, 4.2410810482459436178e+5),
    (20, 2.000000e+01, 3.1887503288536148016e+3, 5.5431116361258162572e-6),
    (20, 8.000000e+01, 2.0265314377577584801e+32, 2.9920407657642264936e-35),
    (20, 3.000000e+02, 2.2959873033106908835e+128, 7.2429734231571056177e-132),
];

fn check(name: &str, n: i32, x: f64, got: f64, want: f64, tol: f64) {
    let err = (got - want).abs() / want.abs();
    // Near a zero of an oscillating function only absolute accuracy is meaningful.
    let abs_ok = (got - want).abs() < 1e-14 && want.abs() < 1e-4;
    assert!(err < tol || abs_ok, "{name}_{n}({x}) = {got:e}, want {want:e}, rel err {err:e}");
}

#[test]
fn j_and_y_match_reference() {
    for &(n, x, j, y) in JY {
        check("J", n, x, bessel_j(n, x), j, 1e-10);
        check("Y", n, x, bessel_y(n, x), y, 1e-10);
    }
}

#[test]
fn i_and_k_match_reference() {
    for &(n, x, i, k) in IK {
        check("I", n, x, bessel_i(n, x), i, 1e-10);
        check("K", n, x, bessel_k(n, x), k, 1e-10);
    }
}
