#pragma once
/**
 * @file   io.hpp
 * @brief  CSV and JSON path files.
 *
 * CSV: header `time,v1,...,vd`, one row per sample, LF line endings.
 * JSON: {"times":[...],"values":[[...],...],"norm":"euclidean|sup|l1"}.
 * Numbers are written with 17 significant digits so they read back exactly.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tvkit::io
{
    /// Shortest-safe round-trip text for a double ("%.17g").
    [[nodiscard]] inline std::string format_double (double x)
    {
        char buf[32];
        std::snprintf (buf, sizeof buf, "%.17g", x);
        return buf;
    }

    /// Raw columns of a CSV path file.
    struct CsvTable
    {
        std::vector<double> times;
        std::vector<double> values; ///< row-major, `columns` per row
        std::size_t columns = 0;
    };

    namespace detail
    {
        inline std::vector<std::string> split (const std::string &line)
        {
            std::vector<std::string> out;
            std::string cell;
            std::istringstream ss (line);
            while (std::getline (ss, cell, ','))
                out.push_back (cell);
            if (!line.empty () && line.back () == ',')
                out.emplace_back ();
            return out;
        }

        inline double parse_number (const std::string &s, std::size_t line_no)
        {
            const char *begin = s.c_str ();
            char *end = nullptr;
            errno = 0;
            const double v = std::strtod (begin, &end);
            while (end && (*end == ' ' || *end == '\t'))
                ++end;
            if (end == begin || *end != '\0' || errno == ERANGE)
                throw FormatError ("line " + std::to_string (line_no) + ": not a number: '" + s + "'");
            return v;
        }
    } // namespace detail

    [[nodiscard]] inline CsvTable read_csv_table (std::istream &in)
    {
        std::string line;
        std::size_t line_no = 0;
        CsvTable t;
        if (!std::getline (in, line))
            throw FormatError ("empty CSV input");
        ++line_no;
        if (!line.empty () && line.back () == '\r')
            line.pop_back ();
        const auto header = detail::split (line);
        if (header.size () < 2 || header[0] != "time")
            throw FormatError ("CSV header must be 'time,v1,...,vd'");
        t.columns = header.size () - 1;
        while (std::getline (in, line))
        {
            ++line_no;
            if (!line.empty () && line.back () == '\r')
                line.pop_back ();
            if (line.empty ())
                continue;
            const auto cells = detail::split (line);
            if (cells.size () != header.size ())
                throw FormatError ("line " + std::to_string (line_no) + ": expected " + std::to_string (header.size ()) + " fields");
            t.times.push_back (detail::parse_number (cells[0], line_no));
            for (std::size_t k = 1; k < cells.size (); ++k)
                t.values.push_back (detail::parse_number (cells[k], line_no));
        }
        if (t.times.empty ())
            throw FormatError ("CSV has no samples");
        return t;
    }

    [[nodiscard]] inline SampledPath read_csv (std::istream &in, NormKind norm = NormKind::euclidean)
    {
        CsvTable t = read_csv_table (in);
        return SampledPath (std::move (t.times), std::move (t.values), t.columns, norm);
    }

    inline void write_csv (std::ostream &out, const SampledPath &p)
    {
        out << "time";
        for (std::size_t k = 1; k <= p.dim (); ++k)
            out << ",v" << k;
        out << '\n';
        for (std::size_t i = 0; i < p.size (); ++i)
        {
            out << format_double (p.time (i));
            for (double x : p.value (i))
                out << ',' << format_double (x);
            out << '\n';
        }
    }

    [[nodiscard]] inline nlohmann::json to_json (const SampledPath &p)
    {
        nlohmann::json j;
        j["times"] = p.times ();
        nlohmann::json rows = nlohmann::json::array ();
        for (std::size_t i = 0; i < p.size (); ++i)
        {
            auto v = p.value (i);
            rows.push_back (std::vector<double> (v.begin (), v.end ()));
        }
        j["values"] = std::move (rows);
        j["norm"] = std::string (to_string (p.norm ()));
        return j;
    }

    [[nodiscard]] inline SampledPath from_json (const nlohmann::json &j)
    {
        try
        {
            auto times = j.at ("times").get<std::vector<double>> ();
            auto rows = j.at ("values").get<std::vector<std::vector<double>>> ();
            const NormKind norm = j.contains ("norm") ? parse_norm (j.at ("norm").get<std::string> ()) : NormKind::euclidean;
            if (times.size () != rows.size ())
                throw FormatError ("JSON path: times and values differ in length");
            return SampledPath::from_rows (std::move (times), rows, norm);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError (std::string ("JSON path: ") + e.what ());
        }
    }

    [[nodiscard]] inline SampledPath read_json (std::istream &in)
    {
        try
        {
            return from_json (nlohmann::json::parse (in));
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw FormatError (std::string ("JSON parse error: ") + e.what ());
        }
    }

    /// Reads `.json` files as JSON and anything else as CSV.
    [[nodiscard]] inline SampledPath read_path_file (const std::string &file, NormKind norm = NormKind::euclidean)
    {
        std::ifstream in (file);
        if (!in)
            throw FormatError ("cannot open '" + file + "'");
        if (file.size () >= 5 && file.compare (file.size () - 5, 5, ".json") == 0)
            return read_json (in);
        return read_csv (in, norm);
    }

} // namespace tvkit::io
