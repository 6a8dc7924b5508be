// Generated by tools/gen_rs_coefficients.py. Do not edit.
//
// Taylor coefficients of the Riemann-Siegel corrections C0..C4 in x = p - 1/2.
// |Z_rs - Z| at t = 200: 2.89e-9, 500: 4.49e-10, 1000: 2.63e-11, 5000: 7.2e-13, 20000: 4.28e-15
#pragma once

#include <array>

namespace jladder::detail {

inline constexpr std::array<double, 39> kRsC0 = {
    3.8268343236508977173e-1,
    8.0713703002858693436e-82,
    1.7489618723100817974,
    3.2326661661859221606e-82,
    2.1180252076854963732,
    -4.5792672315907585256e-81,
    -8.7072166705114807392e-1,
    -4.363069812833101311e-81,
    -3.4733112243465167073,
    -4.5504409090897375636e-82,
    -1.6626947308999324496,
    3.5888771513771097617e-81,
    1.2167312889192321345,
    3.7381563214716826004e-81,
    1.3014304161007975773,
    -3.3490009677078996141e-81,
    3.0511021827361672421e-2,
    -1.7234022809538960818e-81,
    -3.7558030515450952428e-1,
    6.4200338255845256667e-81,
    -1.0857844165640659744e-1,
    -5.4975915055518548846e-82,
    5.1832902999549623376e-2,
    4.7357529823105866047e-82,
    2.999948061990227592e-2,
    4.3888076007804414556e-81,
    -2.275939670612564226e-3,
    1.0068622644999464564e-81,
    -4.3826474165803383059e-3,
    6.6269656406811404292e-81,
    -4.0642301837298469931e-4,
    7.0006783216765193287e-81,
    4.0060977854221139279e-4,
    5.6561362793074701753e-81,
    8.9710579913888412978e-5,
    2.481019806971800578e-80,
    -2.3025650027239107116e-5,
    -1.7028120505960239661e-81,
    -9.3800066019067924847e-6,
};

inline constexpr std::array<double, 40> kRsC1 = {
    -2.0471097642405988267e-84,
    -5.365020525675069406e-2,
    2.8998548507459183379e-82,
    1.102781874108148244e-1,
    9.6703118257900644573e-82,
    1.2317200154315226313,
    2.4205443097683106126e-82,
    1.2634964862799457884,
    -3.7499269595335988507e-81,
    -1.6951089975595030184,
    -6.7702353134773175195e-81,
    -2.999871196765010089,
    9.6495473525445029692e-81,
    -1.0819944959899208643e-1,
    7.4212292574215237464e-81,
    1.9407662946212712688,
    -3.939502362617974102e-80,
    7.8384235615006865329e-1,
    4.6302493527355353461e-81,
    -5.0548296679003659188e-1,
    -5.3111415303702109558e-81,
    -3.8450723496057974051e-1,
    -6.3922632252874673362e-80,
    3.7472646465315320676e-2,
    -1.8649887092595124311e-80,
    9.0920266109731763173e-2,
    -1.5334285110997053631e-79,
    1.0449237550064509218e-2,
    -1.9927374857891128578e-79,
    -1.2582979651583416497e-2,
    -1.9542247012767423359e-79,
    -3.3995037211512740851e-3,
    -1.0283007540579674551e-78,
    1.0410950537714891268e-3,
    8.3785334088914633977e-80,
    5.0109490511184868604e-4,
    1.3703704812550355146e-81,
    -3.9563596690031815595e-5,
    -5.8419531805630894916e-79,
    -4.7624592453571896387e-5,
};

inline constexpr std::array<double, 43> kRsC2 = {
    5.1885428302931684938e-3,
    -9.1769283583834241076e-84,
    1.2378633552253898413e-3,
    -1.603210184450740872e-82,
    -1.8137505725166997411e-1,
    3.7479796192274797389e-82,
    1.4291492748532126541e-1,
    2.5205121514821408228e-81,
    1.3303391766687565325,
    -6.0967241440976632779e-81,
    3.5224723534037336775e-1,
    -7.6299640501569484566e-81,
    -2.4210015958919507238,
    6.8738723099982893112e-80,
    -1.6760787022538108853,
    -1.270525272268963821e-80,
    1.3689416723328372184,
    2.2646953585113849169e-80,
    1.5539019430222983221,
    3.1132644814060927318e-79,
    -1.722164273472998052e-1,
    1.1989837841703853786e-79,
    -6.359068055045430989e-1,
    1.2665403004970195281e-78,
    -9.9116498730412081054e-2,
    2.0681369993894419724e-78,
    1.4033480067387008951e-1,
    2.5206993627088908224e-78,
    4.7823520198272922364e-2,
    1.6159547941784097713e-77,
    -1.7356040641479780798e-2,
    -1.57802993849474076e-78,
    -1.0225012534028591844e-2,
    1.5760581722163093512e-80,
    9.2741491597948878994e-4,
    1.560073177095088283e-77,
    1.3572194372373385345e-3,
    5.9766677652455861713e-77,
    6.41369012029388009e-5,
    7.5077573173402377312e-77,
    -1.2300805698196629883e-4,
    -6.8599513312762659726e-77,
    -1.8313507404789202555e-5,
};

inline constexpr std::array<double, 44> kRsC3 = {
    2.2362570486628192166e-85,
    -2.6794321814389138085e-3,
    1.3823641650677791064e-83,
    2.9953721091035149637e-2,
    -1.3540546496281395574e-82,
    -4.2570172541828697985e-2,
    7.0826637847425472449e-82,
    -2.8997965779803887507e-1,
    1.4420547944146776646e-81,
    4.8888319992354459725e-1,
    -3.9006185587010637806e-80,
    1.2308558763957460812,
    1.4834209697659269857e-80,
    -8.2975607085274087042e-1,
    -5.1387397302605913628e-80,
    -2.2497635366665668665,
    -6.339061517779391044e-79,
    7.8451399610054713794e-2,
    -3.4084794652314198861e-79,
    1.7467492800868894004,
    -4.7939481759579510383e-78,
    4.5968080979749935109e-1,
    -1.0061411520951438811e-77,
    -6.6193534710397749464e-1,
    -1.5763501489740067488e-77,
    -3.1590441036173634579e-1,
    -1.2494195260403118503e-76,
    1.2844792545207495989e-1,
    1.4631588992364564496e-77,
    1.0073382716626152301e-1,
    -2.2274261784554973811e-78,
    -9.5301838488252677595e-3,
    -2.1534471413603648992e-76,
    -1.9264421687514088898e-2,
    -9.8025310299029194402e-76,
    -1.2464637158769291712e-3,
    -1.4499783370015306518e-75,
    2.424396964110308574e-3,
    1.5376321661875388972e-75,
    4.3764769774185701828e-4,
    6.6451188756470300761e-75,
    -2.0714032687001791276e-4,
    4.7417061474014739109e-75,
    -6.2743445041865155605e-5,
};

inline constexpr std::array<double, 45> kRsC4 = {
    4.6483389361763381854e-4,
    -2.8392673409628427935e-84,
    -4.0226429461361883039e-3,
    -2.0252918329174154828e-83,
    3.8471770517961268836e-3,
    9.7641686807468931742e-83,
    6.5811751358094860021e-2,
    6.5478965951771521545e-81,
    -1.9604124343694449118e-1,
    -6.7699687753873099321e-81,
    -2.0854053686358853244e-1,
    5.2942593775459672224e-80,
    9.5077541851417509458e-1,
    5.5569067507334745952e-79,
    5.3415353129148739761e-1,
    4.5636799197442878041e-79,
    -1.6763494411763400796,
    8.8877092158149334658e-78,
    -1.0767471578751289928,
    2.4642154305639487922e-77,
    1.2353393016565969853,
    5.1936477249705553342e-77,
    1.0257825340057275772,
    5.1703469600977192849e-76,
    -4.0124095793988544379e-1,
    -7.1947810624739343199e-77,
    -5.036663995108303448e-1,
    4.3420743770290244615e-77,
    3.5734877955027449858e-2,
    1.6877406149323556983e-75,
    1.4431763086785416624e-1,
    9.2866197559561038141e-75,
    1.5091527417903469417e-2,
    1.6431176103738665202e-74,
    -2.6098874779194361318e-2,
    -2.0359244588312830141e-74,
    -6.126628379519261749e-3,
    -1.0369265385902514314e-73,
    3.0775031298708411848e-3,
    -8.6427140063647385263e-74,
    1.1562478934088752316e-3,
    9.9871738627564829635e-74,
    -2.2775966758472127473e-4,
    1.2915234489152034742e-73,
    -1.4189637118181444433e-4,
};

}  // namespace jladder::detail
