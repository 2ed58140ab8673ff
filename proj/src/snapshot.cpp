#include "geosph/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geosph {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Column {
    const char* name;
    double (*get)(const ParticleSystem&, long, std::size_t);
};

double col_p(const ParticleSystem& s, long, std::size_t i) {
    return invariants(s.sigma[i]).p;
}
double col_sqrt_j2(const ParticleSystem& s, long, std::size_t i) {
    return std::sqrt(invariants(s.sigma[i]).j2);
}
double col_sxx(const ParticleSystem& s, long, std::size_t i) { return s.sigma[i].xx; }
double col_syy(const ParticleSystem& s, long, std::size_t i) { return s.sigma[i].yy; }
double col_szz(const ParticleSystem& s, long, std::size_t i) { return s.sigma[i].zz; }
double col_sxy(const ParticleSystem& s, long, std::size_t i) { return s.sigma[i].xy; }
double col_epsp(const ParticleSystem& s, long, std::size_t i) { return s.eps_p_acc[i]; }
double col_umag(const ParticleSystem& s, long, std::size_t i) {
    return norm(s.pos[i] - s.initial_pos[i]);
}
double col_vmag(const ParticleSystem& s, long, std::size_t i) {
    return norm(s.vel[i]);
}
double col_j(const ParticleSystem& s, long, std::size_t i) { return s.J[i]; }
double col_kind(const ParticleSystem& s, long, std::size_t i) {
    return static_cast<double>(s.kind[i]);
}
double col_epoch(const ParticleSystem&, long epoch, std::size_t) {
    return static_cast<double>(epoch);
}

constexpr Column kColumns[] = {
    {"p", col_p},           {"sqrt_j2", col_sqrt_j2},
    {"sigma_xx", col_sxx},  {"sigma_yy", col_syy},
    {"sigma_zz", col_szz},  {"sigma_xy", col_sxy},
    {"eps_p_acc", col_epsp},{"u_mag", col_umag},
    {"v_mag", col_vmag},    {"jacobian", col_j},
    {"kind", col_kind},     {"epoch", col_epoch},
};

} // namespace

void write_snapshot(const ParticleSystem& sys, long epoch,
                    const std::string& base, double t) {
    const std::size_t n = sys.size();

    {
        std::ofstream vtk(base + ".vtk");
        if (!vtk) throw std::runtime_error("cannot open " + base + ".vtk");
        vtk << "# vtk DataFile Version 3.0\n";
        vtk << "particle snapshot t=" << fmt(t) << "\n";
        vtk << "ASCII\nDATASET POLYDATA\n";
        vtk << "POINTS " << n << " double\n";
        for (std::size_t i = 0; i < n; ++i)
            vtk << fmt(sys.pos[i].x) << " " << fmt(sys.pos[i].y) << " 0\n";
        vtk << "VERTICES " << n << " " << 2 * n << "\n";
        for (std::size_t i = 0; i < n; ++i) vtk << "1 " << i << "\n";
        vtk << "POINT_DATA " << n << "\n";
        for (const Column& c : kColumns) {
            vtk << "SCALARS " << c.name << " double 1\nLOOKUP_TABLE default\n";
            for (std::size_t i = 0; i < n; ++i)
                vtk << fmt(c.get(sys, epoch, i)) << "\n";
        }
        if (!vtk) throw std::runtime_error("write failed for " + base + ".vtk");
    }

    {
        std::ofstream csv(base + ".csv");
        if (!csv) throw std::runtime_error("cannot open " + base + ".csv");
        csv << "x,y";
        for (const Column& c : kColumns) csv << "," << c.name;
        csv << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            csv << fmt(sys.pos[i].x) << "," << fmt(sys.pos[i].y);
            for (const Column& c : kColumns) csv << "," << fmt(c.get(sys, epoch, i));
            csv << "\n";
        }
        if (!csv) throw std::runtime_error("write failed for " + base + ".csv");
    }
}

std::size_t SnapshotTable::column_index(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == name) return k;
    throw std::out_of_range("snapshot column not found: " + name);
}

SnapshotTable read_snapshot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    SnapshotTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty snapshot file: " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != table.columns.size())
            throw std::runtime_error("ragged snapshot row in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace geosph
