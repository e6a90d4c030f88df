#ifndef VNPDA_MODEL_IO_HPP
#define VNPDA_MODEL_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "vnpda/cvb.hpp"

namespace vnpda {

// JSON layout:
//   {"format": "vnpda-model", "version": 1,
//    "hyperparameters": {"a_y", "b_y", "u"}, "n1", "n0",
//    "selection": {"iterations", "converged", "last_change"},
//    "variables": [{"name", "mean", "sd", "degenerate", "c", "depth",
//                   "omega", "log_bf", "counts": {"<path>": [n1, n0], ...}}]}
// The root path is the empty string. Reals are written in shortest
// round-trip form.
void write_model_json(std::ostream& out, const FittedModel& model);
FittedModel read_model_json(std::istream& in);

void save_model(const std::filesystem::path& path, const FittedModel& model);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace vnpda

#endif  // VNPDA_MODEL_IO_HPP
