#include "ouarea/path_grid.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ouarea/csv.hpp"

namespace ouarea {

std::string to_string(GeneratorTag tag) {
  switch (tag) {
    case GeneratorTag::circulant_embedding: return "circulant-embedding";
    case GeneratorTag::triangular_factor: return "triangular-factor";
    case GeneratorTag::cumulative_sum: return "cumulative-sum";
    case GeneratorTag::deterministic: return "deterministic";
  }
  return "unknown";
}

PathGrid::PathGrid(double step, unsigned level, std::size_t cells, double hurst,
                   std::uint64_t seed, GeneratorTag generator, std::vector<double> values)
    : step_(step),
      level_(level),
      cells_(cells),
      modes_(0),
      hurst_(hurst),
      seed_(seed),
      generator_(generator),
      raw_points_(cells + 1) {
  if (!(step_ > 0.0)) throw std::invalid_argument("path: step must be positive");
  if (cells_ == 0) throw std::invalid_argument("path: at least one cell required");
  if (values.empty() || values.size() % (cells_ + 1) != 0)
    throw std::invalid_argument("path: value count is not a multiple of the point count");
  modes_ = values.size() / (cells_ + 1);
  for (std::size_t j = 0; j < modes_; ++j)
    if (values[j * (cells_ + 1)] != 0.0) throw std::invalid_argument("path: paths must start at zero");
  raw_ = std::make_shared<const std::vector<double>>(std::move(values));
}

PathGrid::PathGrid(const PathGrid& base, double step, unsigned level, std::size_t cells,
                   std::size_t offset, std::shared_ptr<const std::vector<double>> raw,
                   std::size_t raw_points)
    : step_(step),
      level_(level),
      cells_(cells),
      modes_(base.modes_),
      hurst_(base.hurst_),
      seed_(base.seed_),
      generator_(base.generator_),
      offset_(offset),
      raw_points_(raw_points),
      raw_(std::move(raw)) {}

PathGrid PathGrid::from_rows(double horizon, const std::vector<std::vector<double>>& rows,
                             double hurst) {
  if (rows.empty()) throw std::invalid_argument("path: no modes given");
  const std::size_t points = rows.front().size();
  if (points < 2 || !std::has_single_bit(points - 1))
    throw std::invalid_argument("path: rows must hold 2^n + 1 values");
  std::vector<double> flat;
  flat.reserve(points * rows.size());
  for (const auto& r : rows) {
    if (r.size() != points) throw std::invalid_argument("path: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  const std::size_t cells = points - 1;
  const auto level = static_cast<unsigned>(std::countr_zero(cells));
  return PathGrid(horizon / static_cast<double>(cells), level, cells, hurst, 0,
                  GeneratorTag::deterministic, std::move(flat));
}

std::span<const double> PathGrid::raw(std::size_t j) const {
  if (j >= modes_) throw std::out_of_range("path: mode index out of range");
  return std::span<const double>(*raw_).subspan(j * raw_points_ + offset_, cells_ + 1);
}

double PathGrid::value(std::size_t j, std::size_t m) const {
  const auto r = raw(j);
  if (m > cells_) throw std::out_of_range("path: node index out of range");
  return r[m] - r[0];
}

std::vector<double> PathGrid::mode_values(std::size_t j) const {
  std::vector<double> out(point_count());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = value(j, m);
  return out;
}

bool PathGrid::operator==(const PathGrid& other) const {
  if (step_ != other.step_ || level_ != other.level_ || cells_ != other.cells_ ||
      modes_ != other.modes_ || hurst_ != other.hurst_ || seed_ != other.seed_ ||
      generator_ != other.generator_)
    return false;
  for (std::size_t j = 0; j < modes_; ++j)
    for (std::size_t m = 0; m <= cells_; ++m)
      if (value(j, m) != other.value(j, m)) return false;
  return true;
}

std::size_t grid_index(const PathGrid& path, double t) {
  const double pos = t / path.step();
  const double rounded = std::round(pos);
  if (!(std::abs(pos - rounded) <= 1e-9 * std::max(1.0, std::abs(pos))))
    throw std::invalid_argument("path: time is not aligned with the grid");
  if (rounded < 0.0 || rounded > static_cast<double>(path.cell_count()))
    throw std::out_of_range("path: time outside the sampled horizon");
  return static_cast<std::size_t>(rounded);
}

PathGrid coarsen(const PathGrid& path, unsigned target_level) {
  if (target_level > path.level())
    throw std::invalid_argument("coarsen: target level exceeds path level");
  const std::size_t stride = std::size_t{1} << (path.level() - target_level);
  if (stride == 1) return path;
  if (path.cell_count() % stride != 0)
    throw std::invalid_argument("coarsen: cell count not divisible by the coarsening stride");
  const std::size_t cells = path.cell_count() / stride;
  // Subsample the raw nodes; value(j, m) keeps subtracting the same base node.
  auto raw = std::make_shared<std::vector<double>>();
  raw->reserve((cells + 1) * path.mode_count());
  for (std::size_t j = 0; j < path.mode_count(); ++j) {
    const auto row = path.raw(j);
    for (std::size_t m = 0; m <= cells; ++m) raw->push_back(row[m * stride]);
  }
  return PathGrid(path, path.step() * static_cast<double>(stride), target_level, cells, 0,
                  std::move(raw), cells + 1);
}

double eval_linear(const PathGrid& path, std::size_t j, double t) {
  if (!(t >= 0.0) || t > path.horizon() * (1.0 + 1e-15))
    throw std::out_of_range("eval_linear: time outside [0, horizon]");
  const double pos = t / path.step();
  auto m = static_cast<std::size_t>(pos);
  if (m >= path.cell_count()) return path.value(j, path.cell_count());
  const double frac = pos - static_cast<double>(m);
  const double left = path.value(j, m);
  if (frac == 0.0) return left;
  return left + frac * (path.value(j, m + 1) - left);
}

PathGrid shift_cells(const PathGrid& path, std::size_t offset) {
  if (offset >= path.cell_count())
    throw std::invalid_argument("shift: shift must leave at least one cell");
  if (offset == 0) return path;
  return PathGrid(path, path.step(), path.level(), path.cell_count() - offset,
                  path.offset_ + offset, path.raw_, path.raw_points_);
}

PathGrid shift(const PathGrid& path, double tau) { return shift_cells(path, grid_index(path, tau)); }

double increment(const PathGrid& path, std::size_t j, std::size_t m) {
  if (m < 1 || m > path.cell_count()) throw std::out_of_range("increment: cell index out of range");
  const auto row = path.raw(j);
  return row[m] - row[m - 1];
}

void write_path_csv(const PathGrid& path, std::ostream& os) {
  os << "t";
  for (std::size_t j = 0; j < path.mode_count(); ++j) os << ",mode_" << j;
  os << '\n';
  csv::RowWriter row(os);
  for (std::size_t m = 0; m < path.point_count(); ++m) {
    row << path.time(m);
    for (std::size_t j = 0; j < path.mode_count(); ++j) row << path.value(j, m);
    row.end();
  }
}

}  // namespace ouarea
