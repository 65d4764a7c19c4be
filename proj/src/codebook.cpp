#include "irs_sense/codebook.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irs_sense {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

double wrap_phase(double t) {
    double w = std::fmod(t, two_pi);
    if (w < 0.0) w += two_pi;
    if (w >= two_pi) w = 0.0;  // fmod rounding at the seam
    return w;
}
}  // namespace

ReflectionCodebook::ReflectionCodebook(std::size_t elements, std::size_t codewords,
                                       std::vector<double> phases)
    : elements_(elements), codewords_(codewords), phases_(std::move(phases)) {
    if (codewords_ == 0) throw std::invalid_argument("codebook: needs at least one codeword");
    if (phases_.size() != elements_ * codewords_)
        throw std::invalid_argument("codebook: phase matrix has wrong size");
    for (const double t : phases_)
        if (!(t >= 0.0 && t < two_pi))
            throw std::invalid_argument("codebook: phases must lie in [0, 2*pi)");
}

void ReflectionCodebook::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("codebook: cannot open " + file.string() + " for writing");
    char buf[32];
    for (std::size_t l = 0; l < elements_; ++l) {
        for (std::size_t m = 0; m < codewords_; ++m) {
            std::snprintf(buf, sizeof buf, "%.17g", phase(l, m));
            out << buf << (m + 1 == codewords_ ? "" : " ");
        }
        out << '\n';
    }
}

ReflectionCodebook ReflectionCodebook::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("codebook: cannot open " + file.string());
    std::vector<double> phases;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::size_t n = 0;
        double v = 0.0;
        while (ss >> v) {
            phases.push_back(v);
            ++n;
        }
        if (rows == 0)
            cols = n;
        else if (n != cols)
            throw std::runtime_error("codebook: ragged rows in " + file.string());
        ++rows;
    }
    if (cols == 0) throw std::runtime_error("codebook: no data in " + file.string());
    return ReflectionCodebook(rows, cols, std::move(phases));
}

ReflectionCodebook random_codebook(std::size_t elements, std::size_t codewords, RngStream& rng) {
    if (codewords == 0) throw std::invalid_argument("random_codebook: codewords must be >= 1");
    std::vector<double> phases(elements * codewords);
    for (auto& t : phases) t = two_pi * rng.uniform();
    return ReflectionCodebook(elements, codewords, std::move(phases));
}

ReflectionCodebook optimal_phases(const ChannelRealization& chan) {
    const std::size_t elements = chan.elements();
    if (elements == 0) throw std::invalid_argument("optimal_phases: needs at least one element");
    std::vector<double> phases(elements);
    const double ref = std::arg(chan.h_ps);  // arg(0) == 0
    for (std::size_t l = 0; l < elements; ++l)
        phases[l] = wrap_phase(ref + std::arg(chan.h_is[l]) - std::arg(chan.h_pi[l]));
    return ReflectionCodebook(elements, 1, std::move(phases));
}

std::vector<std::complex<double>> effective_channels(const ChannelRealization& chan,
                                                     const ReflectionCodebook& book) {
    if (book.elements() != chan.elements())
        throw std::invalid_argument("effective_channels: codebook/channel element mismatch");
    const std::size_t m_count = book.codewords();
    const std::size_t l_count = chan.elements();
    std::vector<std::complex<double>> g(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        std::complex<double> reflected{0.0, 0.0};
        for (std::size_t l = 0; l < l_count; ++l)
            reflected += std::conj(chan.h_is[l]) * book.reflection(l, m) * chan.h_pi[l];
        g[m] = chan.h_ps + reflected;
    }
    return g;
}

}  // namespace irs_sense
