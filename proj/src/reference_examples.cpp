#include "pcr3bp/reference_examples.hpp"

#include <array>

#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

const std::array<ReferenceExample, 4> &table()
{
    static const std::array<ReferenceExample, 4> examples{{
        {1,
         "clockwise orbit near L4, no primary enclosed",
         {0.487957127501505, 0.84849821703225, -0.036041155996589, 0.02072666577125, 0.0},
         {5.0, 8.0},
         6.3036094149426,
         2.9986240063314,
         6.32403,
         1e-6,
         1e-9,
         5e-3,
         1e-2},
        {2,
         "counterclockwise orbit around Jupiter",
         {1.01159848498974, 0.0, 0.0, 0.26384566980412, 0.0},
         {0.1, 0.5},
         0.30139544664015,
         3.0790227765880,
         -3.74433,
         1e-6,
         1e-9,
         5e-3,
         1e-3},
        {3,
         "clockwise orbit around both primaries",
         {1.285278846123773, 3.401751107285172, 3.892316782809678, -1.47062858674288, 0.0},
         {4.0, 7.0},
         5.4912835927302,
         -3.5390576031917,
         10.9823,
         1e-4,
         1e-8,
         5e-3,
         1e-2},
        {4,
         "3-simple orbit around the Sun",
         {0.3964805517652452, -0.07419606744562268, 0.2120527494053103, 1.133143493746107, 0.0},
         {5.0, 8.0},
         6.2849221865548,
         3.7789562336238,
         -21.9944,
         1e-4,
         1e-8,
         2e-2,
         2e-2},
    }};
    return examples;
}

} // namespace

std::span<const ReferenceExample> reference_examples()
{
    return table();
}

const ReferenceExample &reference_example(int id)
{
    if (id < 1 || id > 4) {
        throw Error(ErrorKind::Domain, "example id must be 1, 2, 3 or 4");
    }
    return table()[static_cast<std::size_t>(id - 1)];
}

} // namespace pcr3bp
