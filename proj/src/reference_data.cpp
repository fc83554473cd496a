#include "crie/reference_data.hpp"

#include <array>

namespace crie::refdata {
namespace {

constexpr std::array<RefCase, 72> kCases = {{
    {"power:0.1,0.9", 0.1, 0.6, 0.13182},
    {"power:0.3,0.9", 0.1, 0.6, 0.13180},
    {"betac:0.2", 0.1, 0.6, 0.13193},
    {"betac:0.5", 0.1, 0.6, 0.13084},
    {"power:0.1,0.9", 0.3, 0.6, 0.07722},
    {"power:0.3,0.9", 0.3, 0.6, 0.07687},
    {"betac:0.2", 0.3, 0.6, 0.07705},
    {"betac:0.5", 0.3, 0.6, 0.07643},
    {"power:0.1,0.9", 0.5, 0.6, 0.02522},
    {"power:0.3,0.9", 0.5, 0.6, 0.02517},
    {"betac:0.2", 0.5, 0.6, 0.02520},
    {"betac:0.5", 0.5, 0.6, 0.02513},
    {"power:0.1,0.9", 0.1, 0.7, 0.15839},
    {"power:0.3,0.9", 0.1, 0.7, 0.15862},
    {"betac:0.2", 0.1, 0.7, 0.15868},
    {"betac:0.5", 0.1, 0.7, 0.15752},
    {"power:0.1,0.9", 0.3, 0.7, 0.10347},
    {"power:0.3,0.9", 0.3, 0.7, 0.10298},
    {"betac:0.2", 0.3, 0.7, 0.10325},
    {"betac:0.5", 0.3, 0.7, 0.10232},
    {"power:0.1,0.9", 0.5, 0.7, 0.05078},
    {"power:0.3,0.9", 0.5, 0.7, 0.05063},
    {"betac:0.2", 0.5, 0.7, 0.05071},
    {"betac:0.5", 0.5, 0.7, 0.05047},
    {"power:0.1,0.9", 0.1, 0.9, 0.21145},
    {"power:0.3,0.9", 0.1, 0.9, 0.21241},
    {"betac:0.2", 0.1, 0.9, 0.21223},
    {"betac:0.5", 0.1, 0.9, 0.21111},
    {"power:0.1,0.9", 0.3, 0.9, 0.15629},
    {"power:0.3,0.9", 0.3, 0.9, 0.15559},
    {"betac:0.2", 0.3, 0.9, 0.15599},
    {"betac:0.5", 0.3, 0.9, 0.15447},
    {"power:0.1,0.9", 0.5, 0.9, 0.10258},
    {"power:0.3,0.9", 0.5, 0.9, 0.10214},
    {"betac:0.2", 0.5, 0.9, 0.10237},
    {"betac:0.5", 0.5, 0.9, 0.10162},
    {"exp:0.5", 3, 10, 1.52470},
    {"exp:1", 3, 10, 0.97614},
    {"lomax:2,0.5", 3, 10, 1.61098},
    {"lomax:3,1", 3, 10, 1.45535},
    {"exp:0.5", 7, 10, 0.76254},
    {"exp:1", 7, 10, 0.68870},
    {"lomax:2,0.5", 7, 10, 0.77343},
    {"lomax:3,1", 7, 10, 0.77164},
    {"exp:0.5", 9, 10, 0.25514},
    {"exp:1", 9, 10, 0.25652},
    {"lomax:2,0.5", 9, 10, 0.25364},
    {"lomax:3,1", 9, 10, 0.25439},
    {"exp:0.5", 3, 12, 1.73694},
    {"exp:1", 3, 12, 0.99480},
    {"lomax:2,0.5", 3, 12, 1.95250},
    {"lomax:3,1", 3, 12, 1.69662},
    {"exp:0.5", 7, 12, 1.20018},
    {"exp:1", 7, 12, 0.90432},
    {"lomax:2,0.5", 7, 12, 1.28394},
    {"lomax:3,1", 7, 12, 1.26233},
    {"exp:0.5", 9, 12, 0.76254},
    {"exp:1", 9, 12, 0.68870},
    {"lomax:2,0.5", 9, 12, 0.77200},
    {"lomax:3,1", 9, 12, 0.77252},
    {"exp:0.5", 3, 15, 1.90245},
    {"exp:1", 3, 15, 0.99955},
    {"lomax:2,0.5", 3, 15, 2.38429},
    {"lomax:3,1", 3, 15, 1.96523},
    {"exp:0.5", 7, 15, 1.64355},
    {"exp:1", 7, 15, 0.98871},
    {"lomax:2,0.5", 7, 15, 2.00701},
    {"lomax:3,1", 7, 15, 1.91438},
    {"exp:0.5", 9, 15, 1.37740},
    {"exp:1", 9, 15, 0.95123},
    {"lomax:2,0.5", 9, 15, 1.54259},
    {"lomax:3,1", 9, 15, 1.51885},
}};

}  // namespace

std::span<const RefCase> crie_reference_cases() { return kCases; }

}  // namespace crie::refdata
