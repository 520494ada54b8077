#pragma once

#include <nlohmann/json.hpp>

#include "graphlim/functionals.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/rational.hpp"
#include "graphlim/spectral.hpp"

namespace graphlim {

using Json = nlohmann::ordered_json;

Json json_of(const Rational& r);
Json json_of(const StatVector& s);
Json json_of(const WeakCauchyProfile& p);
Json json_of(const Partition& p, bool include_cut_edges = false);
Json json_of(const DistanceEstimate& e);
Json json_of(const PartitionBound& b);
Json json_of(const StrongCauchyProfile& p);
Json json_of(const NormedValue& v);
Json json_of(const AlmostAdditiveReport& r);
Json json_of(const NormalizedLimitReport& r);
Json json_of(const SubadditiveReport& r);
Json json_of(const SubadditiveLimitReport& r);
Json json_of(const FeketeReport& r);
Json json_of(const SpectralCDF& cdf, bool include_jumps = false);
Json json_of(const IdsReport& r);

// A finite double, or the strings "inf" / "-inf" / "nan".
Json json_number(double x);

}  // namespace graphlim
