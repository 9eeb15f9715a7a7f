// (nu, t, J̃, envelope (t/2)^-nu sqrt(J²+Y²), Ĩ, K̃), 20 digits
pub const BESSEL_REF: &[(f64, f64, f64, f64, f64, f64)] = &[
    (-3.5, 0.001, -1.0578555749375987687, 1.0578555749375987687, -1.0578553633665049383, 1.6616753190563866005),
    (-3.5, 0.5, -1.0848750677533194096, 1.084875067765661334, -1.0319363684730056552, 1.6209702146522234849),
    (-3.5, 1.9, -1.5960915358523987806, 1.596841668120086185, -0.68655282079887898214, 1.1932804483977112855),
    (-3.5, 2.1, -1.7618547198602356197, 1.7643680725307115915, -0.55631359415271937229, 1.1153708656843903453),
    (-3.5, 5.0, -0.68068194629513417562, 10.152718533075776082, 183.07956280790509969, 0.27244284616188125601),
    (-3.5, 11.9, -19.40956106334247497, 121.4703632793549702, 5187695.4107648490952, 0.0020523232564360804745),
    (-3.5, 12.1, 3.9691338021110122746, 127.60419140428294826, 6720640.6037998282292, 0.0017530976791327612494),
    (-3.5, 25.0, 118.74627317227624641, 1107.2730963780322721, 31064981711048.454417, 3.0408130805619858224e-8),
    (-3.5, 33.3, 2299.6241671077452802, 2611.2442291254270912, 314237551887854175.37, 1.6858812967926528682e-11),
    (-3.5, 49.9, -2129.8637511658877215, 8773.258054618504859, 1.8204124707547322754e+25, 3.304828356601420949e-18),
    (-1.3, 0.001, -0.23111514775573137419, 0.28567403162812323876, -0.2311147625641394409, 0.44873497855726292387),
    (-1.3, 0.5, -0.27714058756527059874, 0.32686799310042507758, -0.18079000456537789627, 0.3975391787595454205),
    (-1.3, 1.9, -0.55118382396812798416, 0.58958871036651086296, 0.9986330877872359362, 0.17277037504075316606),
    (-1.3, 2.1, -0.54227907362928791761, 0.63001624340694658427, 1.4473611070650267526, 0.14955792444420610173),
    (-1.3, 5.0, 1.1829202870114519028, 1.1908367885551318, 74.158200820087637354, 0.014174404792000973678),
    (-1.3, 11.9, 1.8745370494796946877, 2.355790813122669278, 162425.72754725219902, 0.000026563898182006221809),
    (-1.3, 12.1, 1.5762077376194558551, 2.3872155612901413479, 201269.91727348104139, 0.000022020258572114803766),
    (-1.3, 25.0, 1.7289128027463485947, 4.2579731330384394335, 148771367663.18619696, 9.549392401730512241e-11),
    (-1.3, 33.3, -5.3530833720718007507, 5.3542340085077067943, 758574500815551.15231, 2.9643014325977932017e-14),
    (-1.3, 49.9, 4.5665702596869743306, 7.3985101386480128777, 1.7100783776805388669e+22, 2.5125299931760012581e-21),
    (-0.5, 0.001, 0.56418930145298802097, 0.56418958354775628695, 0.56418986564257156873, 0.88534114149310041318),
    (-0.5, 0.5, 0.49512294012170244001, 0.56418958354775628695, 0.63619482370742469592, 0.53752380174996011936),
    (-0.5, 1.9, -0.18239660609405450649, 0.56418958354775628695, 1.928248529012415351, 0.13255173755789014404),
    (-0.5, 2.1, -0.28482891350990058523, 0.56418958354775628695, 2.3381783217052777125, 0.10852418391256640959),
    (-0.5, 5.0, 0.16003925028474403344, 0.56418958354775628695, 41.868479953300484979, 0.0059713500528631508166),
    (-0.5, 11.9, 0.44349267301907432065, 0.56418958354775628695, 41543.147984390986774, 6.017839575023537862e-6),
    (-0.5, 12.1, 0.50393758407475553229, 0.56418958354775628695, 50740.91553001991785, 4.9269903271615034617e-6),
    (-0.5, 25.0, 0.55922630163661819407, 0.56418958354775628695, 20312207085.278924016, 1.2307869792307557085e-11),
    (-0.5, 33.3, -0.17387077269383745261, 0.56418958354775628695, 81733729348055.786844, 3.0587127492420825108e-15),
    (-0.5, 49.9, 0.52692567376963425521, 0.56418958354775628695, 1.323395687105415925e+21, 1.8890797547240766475e-22),
    (0.0, 0.001, 0.999999750000015625, 4.581873635587153354, 1.000000250000015625, 7.0236888005623813436),
    (0.0, 0.5, 0.93846980724081290423, 1.0384230754085807253, 1.0634833707413235193, 0.92441907122766586178),
    (0.0, 1.9, 0.28181855937438547071, 0.5711845448489568182, 2.1277401940538878569, 0.12884597927604747986),
    (0.0, 2.1, 0.1666069803319903266, 0.54441370688230041725, 2.4462831294361822913, 0.10078374088996694581),
    (0.0, 5.0, -0.17759677131433830435, 0.35598277805334996657, 27.239871823604446895, 0.0036910983340425942747),
    (0.0, 11.9, 0.025049441699589563728, 0.23119424897908329269, 17219.240276268021383, 2.4422886371722719055e-6),
    (0.0, 12.1, 0.069666773606807388498, 0.22927883775545680265, 20853.117403880704561, 1.9833013543985353367e-6),
    (0.0, 25.0, 0.096266783275958116174, 0.15956099640836469452, 5774560606.4663103158, 3.4641615622131143554e-12),
    (0.0, 33.3, 0.063338485947520899644, 0.13825902898462308276, 20107112738190.08221, 7.4683572779177311919e-16),
    (0.0, 49.9, 0.045788625467907050808, 0.11294809094538908257, 2.6561554477675358588e+20, 3.7725741700223390789e-23),
    (0.5, 0.001, 1.1283789790323274611, 1128.3791670955125739, 1.128379355158716493, 1770.6822829862008264),
    (0.5, 0.5, 1.0819475798690561827, 2.2567583341910251478, 1.175986173580832651, 2.1500952069998404774),
    (0.5, 1.9, 0.56199226566691330208, 0.59388377215553293363, 1.9409089179172462579, 0.13952814479777909899),
    (0.5, 2.1, 0.46382260293728624537, 0.53732341290262503519, 2.161037790901411573, 0.10335636563101562818),
    (0.5, 5.0, -0.21640603487041214336, 0.22567583341910251478, 16.745871389515641638, 0.0023885400211452603266),
    (0.5, 11.9, -0.058612860492172212034, 0.094821778747522065033, 6982.0416774050270779, 1.0114016092476534222e-6),
    (0.5, 12.1, -0.041931638968443163341, 0.093254476619463849082, 8386.9281862617022131, 8.1437856647297577879e-7),
    (0.5, 25.0, -0.0059737183015583422088, 0.045135166683820502956, 1624976566.8223139213, 9.8462958338460456682e-13),
    (0.5, 33.3, 0.032236021919106705664, 0.033885260273138515733, 4908932693576.9241348, 1.8370647142595090155e-16),
    (0.5, 49.9, -0.0080818162912290125786, 0.022612808959829911301, 53041911306830297594.0, 7.5714619427818703306e-24),
    (1.0, 0.001, 0.99999987500000520833, 1273244.3344626715537, 1.0000001250000052083, 1999992.4763121711486),
    (1.0, 0.5, 0.96907383069949554554, 5.9651320293517087163, 1.0315772215635852654, 6.6257644800132035748),
    (1.0, 1.9, 0.61174428706677270809, 0.63575182978554947618, 1.5244677611104094251, 0.16806331898175537935),
    (1.0, 2.1, 0.54123060548289397004, 0.54346384686388627699, 1.6623807703201011039, 0.11690134431762658153),
    (1.0, 5.0, -0.13103165503658608882, 0.14376180330460667357, 9.7342568569802108797, 0.0016178453781808656833),
    (1.0, 11.9, -0.038484579775113289207, 0.038924245200279853277, 2769.5899483021004984, 4.2737996560465512408e-7),
    (1.0, 12.1, -0.035660987335028888791, 0.037961557052905328513, 3301.1423219768816118, 3.4110530964250984282e-7),
    (1.0, 25.0, -0.010028019966423192372, 0.012769976540970631834, 452629210.39029610825, 2.8262224585599470162e-13),
    (1.0, 33.3, 0.0074391680421309465463, 0.0083057158008293863682, 1189361326224.3455411, 4.5523585979219867167e-17),
    (1.0, 49.9, -0.0041201185318190531303, 0.0045274319020279251127, 10538695645738611605.0, 1.5271301844049695289e-24),
    (2.7, 0.001, 0.23977066038395566586, 329042756563538324.64, 0.23977069278539844757, 516859001351097665.89),
    (2.7, 0.5, 0.23574732743060340526, 910.36606741134825197, 0.24384788497904746502, 1328.3209950742886982),
    (2.7, 1.9, 0.18661461162131469457, 1.1785138656484889076, 0.30417699772139169769, 0.65134557160202967007),
    (2.7, 2.1, 0.17618644096616690937, 0.77332144279800705812, 0.32015860534240635797, 0.34803029311072085411),
    (2.7, 5.0, 0.025255908870913462034, 0.032415839404093427228, 1.0396792906566345416, 0.00060037549091678211625),
    (2.7, 11.9, 0.0012006077413086918534, 0.0018986450616687815979, 101.47408552403031808, 2.6548386001947019478e-8),
    (2.7, 12.1, 0.00084595984635732025469, 0.001799281458399808855, 118.1248813150323537, 2.0514916837821179557e-8),
    (2.7, 25.0, 0.000052671398652348549955, 0.00017479939670448372257, 5436084.900903172697, 4.3650747986462765346e-15),
    (2.7, 33.3, -0.000069374408597775533617, 0.000069757363070235440993, 9063250379.3360145585, 4.1901428174221695416e-19),
    (2.7, 49.9, 0.000010929487148078684993, 0.000019103217592601156645, 41698718551838576.012, 6.8541300239763554159e-27),
    (7.25, 0.001, 0.00011938142365266710585, 2.6946992930091389998e+50, 0.00011938143088790512223, 4.2328234126496738261e+50),
    (7.25, 0.5, 0.00011848007173810833707, 199430841690.40177991, 0.0001202888936626336206, 307062147995.10880115),
    (7.25, 1.9, 0.00010694059058896400261, 895.77794439644350316, 0.00013309720795224784502, 1053.9426887862276262),
    (7.25, 2.1, 0.00010434521402835732802, 216.92359353055850212, 0.00013632081978898183461, 239.36615653199744208),
    (7.25, 5.0, 0.000054065982984636812141, 0.0019681334756367903839, 0.00024754424106199924433, 0.00038889129549702376337),
    (7.25, 11.9, -2.5387821933173205267e-7, 6.2752202947626943769e-7, 0.0044821923173657819363, 4.7077762345518006293e-11),
    (7.25, 12.1, -2.9952833694410468986e-7, 5.4904229886740220957e-7, 0.0049872648643762820706, 3.2824035514913881542e-11),
    (7.25, 25.0, 4.6418707126706957171e-10, 1.8190113345167274927e-9, 22.199627990589225986, 1.0764642906221634209e-19),
    (7.25, 33.3, -1.9472803336925450242e-10, 1.9530060778976308942e-10, 12632.26869998525027, 2.2621219428242521629e-24),
    (7.25, 49.9, 7.1870458078188297126e-12, 8.4417437536090411211e-12, 11610215628.76885141, 4.7205089773469636345e-33),
    (20.0, 0.001, 4.110317574379812478e-19, 4.2574012250929168051e+148, 4.110317672244517795e-19, 6.6875100300809381962e+148),
    (20.0, 0.5, 4.0981018959638510125e-19, 4.6964870858943673477e+40, 4.1225681037723497716e-19, 7.3288495924425191717e+40),
    (20.0, 1.9, 3.9372481276300533802e-19, 315977999818787717.18, 4.2906345022752884447e-19, 451355297473854646.31),
    (20.0, 2.1, 3.8998475890661362981e-19, 5829269039001335.9963, 4.3316037476164015642e-19, 8153284364635186.7556),
    (20.0, 5.0, 3.0460101050930636089e-19, 6.5244638427765598942, 5.5242095948198255682e-19, 5.3073431997041280885),
    (20.0, 11.9, 7.08764126065981612e-20, 2.9265021251102582937e-14, 2.0912071994754586659e-18, 1.0739412060140789859e-15),
    (20.0, 12.1, 6.6588280889745174039e-20, 1.6146273538817754227e-14, 2.205590177241171613e-18, 5.2047534629921950578e-16),
    (20.0, 25.0, 5.9945057466897832896e-24, 2.3606337082041641725e-23, 2.8244738440698710665e-16, 7.3491862205252512926e-31),
    (20.0, 33.3, 3.0344232975635955571e-26, 5.7648341862262090688e-26, 2.0111122157357892345e-14, 8.9048531237602704184e-38),
    (20.0, 49.9, -1.3143376842865503928e-29, 1.3503979862820527176e-29, 5.5968283283048748805e-10, 2.1765132921627089977e-49),
    (-20.0, 0.001, 3.7383120565025933302e-151, 38720838575435816.939, 3.7383121455100243065e-151, 60822549404119292.342),
    (-20.0, 0.5, 3.3898704366081023733e-43, 38848430645574866.832, 3.4101084093699860457e-43, 60622822951856102.328),
    (-20.0, 1.9, 5.0598424781365348929e-20, 40607014183840249.263, 5.5139869292003621142e-20, 58004642655448810.867),
    (-20.0, 2.1, 2.7454883006032115518e-18, 41037988234507089.663, 3.049444148861628206e-18, 57399029893774083.037),
    (-20.0, 5.0, 0.0025196005045735925591, 53969099980479956.613, 0.004569519076514376131, 43901313989604065.606),
    (-20.0, 11.9, 677922981775.6523231, 279915838551179217.77, 20002104621857.472324, 10272097554850393.061),
    (-20.0, 12.1, 1240545760660.3821894, 300806552165067092.61, 41090346643144.69133, 9696503284847184.7478),
    (-20.0, 25.0, 4.509764890371570337e+20, 1.7759434165469844739e+21, 2.1248979505596441616e+28, 55289132066357.958078),
    (-20.0, 33.3, 2.1809498426127716977e+23, 4.1433949644513217308e+23, 1.4454591335056368524e+35, 640024021511.71143052),
    (-20.0, 49.9, -1.0035267612835282108e+27, 1.0310596232756088131e+27, 4.2733059189522385649e+46, 16618174.774165559984),
    (-7.5, 0.001, -595.63876800860525759, 595.63876800860525759, -595.63872219024024994, 935.62711691323526421),
    (-7.5, 0.5, -601.39873350862372609, 601.39873350862372609, -589.94384094024063051, 926.68161836420283766),
    (-7.5, 1.9, -685.61144939489664548, 685.61144939489728738, -519.29559389877455832, 815.70766904548933356),
    (-7.5, 2.1, -707.69283503566594313, 707.69283503567788226, -503.96800576463236663, 791.63135695501706085),
    (-7.5, 5.0, -1768.9372357509687141, 1769.205779925062593, -108.70228747812333326, 382.6007257972428705),
    (-7.5, 11.9, 165298.52633726046477, 168299.14567566097907, 1022989931.8941390586, 14.407537673861165306),
    (-7.5, 12.1, 177011.08152491843195, 188199.77115807407966, 1458843896.8859226099, 12.81832151127426736),
    (-7.5, 25.0, 23096656.397245172783, 27539558.200121596439, 311583026553411756.51, 0.0017475757786561483919),
    (-7.5, 33.3, 81463300.884429876627, 202741451.5416721793, 1.2391755564543822762e+22, 2.4768250137604208593e-6),
    (-7.5, 49.9, 667007766.59631542666, 3414971087.8145851432, 4.5235699685488123191e+30, 1.9797671856447821702e-12),
];
