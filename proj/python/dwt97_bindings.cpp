#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dwt97/dwt2d.hpp"
#include "dwt97/fixpoint.hpp"
#include "dwt97/lifting.hpp"
#include "dwt97/metrics.hpp"
#include "dwt97/pgm.hpp"
#include "dwt97/rtlsim.hpp"

namespace py = pybind11;
using namespace dwt97;

namespace {

using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using I32Array = py::array_t<std::int32_t, py::array::c_style | py::array::forcecast>;
using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

CoeffVariant parse_variant(const std::string& s) {
    if (s == "binary") return CoeffVariant::BinaryColumn;
    if (s == "integer") return CoeffVariant::IntegerColumn;
    throw py::value_error("coeffs must be 'binary' or 'integer'");
}

Mode parse_mode(const std::string& s) {
    if (s == "float") return Mode::Float;
    if (s == "fixed") return Mode::Fixed;
    throw py::value_error("mode must be 'float' or 'fixed'");
}

CoeffName parse_name(const std::string& s) {
    for (auto n : kAllCoeffNames)
        if (to_string(n) == s) return n;
    throw py::value_error("unknown constant '" + s + "'");
}

template <class T>
std::vector<T> vec_1d(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
    return {a.data(), a.data() + a.size()};
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <class T>
py::array_t<T> to_array_2d(const Plane<T>& p) {
    py::array_t<T> out({static_cast<py::ssize_t>(p.height), static_cast<py::ssize_t>(p.width)});
    std::copy(p.pixels.begin(), p.pixels.end(), out.mutable_data());
    return out;
}

// 8-bit image (0..255) to the level-shifted plane.
ImagePlane image_from_u8(const U8Array& a) {
    if (a.ndim() != 2) throw py::value_error("expected a 2-D uint8 image");
    ImagePlane p(static_cast<std::size_t>(a.shape(1)), static_cast<std::size_t>(a.shape(0)));
    for (std::size_t i = 0; i < p.pixels.size(); ++i) p.pixels[i] = static_cast<std::int32_t>(a.data()[i]) - 128;
    return p;
}

U8Array image_to_u8(const ImagePlane& p) {
    U8Array out({static_cast<py::ssize_t>(p.height), static_cast<py::ssize_t>(p.width)});
    for (std::size_t i = 0; i < p.pixels.size(); ++i) out.mutable_data()[i] = static_cast<std::uint8_t>(p.pixels[i] + 128);
    return out;
}

Plane<double> plane_from_f64(const F64Array& a) {
    if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
    return Plane<double>(static_cast<std::size_t>(a.shape(1)), static_cast<std::size_t>(a.shape(0)),
                         std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict report_dict(const DesignReport& d) {
    py::dict r;
    r["design"] = rtl::design_number(d.kind);
    r["kind"] = std::string(rtl::to_string(d.kind));
    r["le_estimate"] = d.le_estimate;
    r["adders_by_stage"] = d.adders_by_stage;
    r["adder_count"] = d.adder_count;
    r["register_bits"] = d.register_bits;
    r["critical_path_adders"] = d.critical_path_adders;
    r["latency"] = d.latency;
    r["stage_count"] = d.stage_count;
    r["max_freq_proxy"] = d.max_freq_proxy;
    return r;
}

}  // namespace

PYBIND11_MODULE(dwt97, m) {
    m.doc() = "CDF 9/7 lifting DWT, fixed-point datapath simulation and cost model";

    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<OverflowFault>(m, "OverflowFault", PyExc_RuntimeError);

    m.def(
        "coefficient_table",
        [] {
            py::list rows;
            for (const auto& r : coefficient_table()) {
                py::dict d;
                d["name"] = std::string(to_string(r.name));
                d["float"] = r.float_value;
                d["integer"] = r.integer_column;
                d["binary"] = std::string(r.binary_column);
                rows.append(d);
            }
            return rows;
        },
        "Rows of the lifting constant table.");
    m.def(
        "coeffs",
        [](const std::string& variant) {
            py::dict d;
            for (const auto& c : coeffs_for(parse_variant(variant)).all()) d[py::str(std::string(to_string(c.name)))] = c.scaled_int;
            return d;
        },
        py::arg("variant") = "binary", "Scaled integer constants by name.");
    m.def("round_to_q8", &round_to_q8, py::arg("x"));
    m.def(
        "mul_const",
        [](std::int64_t x, const std::string& name, const std::string& variant) {
            return mul_const(x, shift_add_plan(coeffs_for(parse_variant(variant))[parse_name(name)]));
        },
        py::arg("x"), py::arg("name"), py::arg("variant") = "binary", "Shift-add product x * constant.");

    m.def(
        "lifting_forward",
        [](const F64Array& s) {
            const auto b = lifting_forward(vec_1d(s));
            return py::make_tuple(to_array(b.low), to_array(b.high));
        },
        py::arg("signal"), "Float lifting; returns (low, high).");
    m.def(
        "lifting_inverse",
        [](const F64Array& low, const F64Array& high) {
            return to_array(lifting_inverse(BandPair<double>{vec_1d(low), vec_1d(high)}));
        },
        py::arg("low"), py::arg("high"));
    m.def(
        "lifting_forward_fixed",
        [](const I32Array& s, const std::string& variant) {
            const auto b = lifting_forward_fixed(vec_1d(s), coeffs_for(parse_variant(variant)));
            return py::make_tuple(to_array(b.low), to_array(b.high));
        },
        py::arg("signal"), py::arg("variant") = "binary", "Integer datapath on signed 8-bit samples.");
    m.def(
        "lifting_inverse_fixed",
        [](const I32Array& low, const I32Array& high, const std::string& variant) {
            return to_array(
                lifting_inverse_fixed(BandPair<std::int32_t>{vec_1d(low), vec_1d(high)}, coeffs_for(parse_variant(variant))));
        },
        py::arg("low"), py::arg("high"), py::arg("variant") = "binary");
    m.def(
        "fir_forward",
        [](const F64Array& s) {
            const auto b = fir_forward(vec_1d(s));
            return py::make_tuple(to_array(b.low), to_array(b.high));
        },
        py::arg("signal"), "9/7 analysis filter bank; returns (low, high).");

    m.def(
        "simulate",
        [](int design, const I32Array& s, const std::string& variant, const std::string& overflow) {
            auto model = rtl::build_design(rtl::design_from_number(design), coeffs_for(parse_variant(variant)));
            if (overflow != "halt" && overflow != "record") throw py::value_error("overflow must be 'halt' or 'record'");
            model.set_overflow_policy(overflow == "record" ? rtl::OverflowPolicy::Record : rtl::OverflowPolicy::Halt);
            const auto b = rtl::run_stream(model, vec_1d(s));
            py::dict r;
            r["low"] = to_array(b.low);
            r["high"] = to_array(b.high);
            r["latency"] = model.latency();
            r["stage_count"] = model.stage_count();
            r["cycles"] = model.cycle();
            r["overflow_events"] = model.overflow_events().size();
            return r;
        },
        py::arg("design"), py::arg("signal"), py::arg("variant") = "binary", py::arg("overflow") = "halt",
        "Streams a signal through hardware design 1..5.");

    m.def(
        "forward_2d",
        [](const U8Array& img, int octaves, const std::string& mode, const std::string& variant) {
            const auto plane = image_from_u8(img);
            const int o = octaves > 0 ? octaves : default_octaves(plane.width, plane.height);
            return to_array_2d(forward_multi(plane, o, parse_mode(mode), coeffs_for(parse_variant(variant))).data);
        },
        py::arg("image"), py::arg("octaves") = 0, py::arg("mode") = "float", py::arg("variant") = "binary",
        "Multi-octave transform of an 8-bit image in quadrant layout (octaves 0: automatic).");
    m.def(
        "inverse_2d",
        [](const F64Array& coeffs, int octaves, const std::string& mode, const std::string& variant) {
            const auto rec = inverse_multi(SubbandImage<double>{plane_from_f64(coeffs), octaves}, parse_mode(mode),
                                           coeffs_for(parse_variant(variant)));
            return image_to_u8(to_image(rec));
        },
        py::arg("coeffs"), py::arg("octaves"), py::arg("mode") = "float", py::arg("variant") = "binary",
        "Inverse transform, rounded and clamped to an 8-bit image.");

    m.def(
        "psnr",
        [](const U8Array& a, const U8Array& b) {
            const auto r = psnr(image_from_u8(a), image_from_u8(b));
            return py::make_tuple(r.mse, r.psnr_db);
        },
        py::arg("original"), py::arg("reconstructed"), "Returns (mse, psnr_db); psnr is inf for identical images.");
    m.def(
        "rounding_error_study",
        [](const U8Array& tile, int octaves, const std::string& variant) {
            py::list rows;
            for (const auto& r : rounding_error_study(image_from_u8(tile), octaves, coeffs_for(parse_variant(variant))))
                rows.append(py::make_tuple(r.method, r.mse, r.psnr_db));
            return rows;
        },
        py::arg("tile"), py::arg("octaves") = 1, py::arg("variant") = "binary",
        "Four (method, mse, psnr_db) rows.");
    m.def(
        "tradeoff_report",
        [](const std::string& variant) {
            py::list out;
            for (const auto& d : tradeoff_report(coeffs_for(parse_variant(variant)))) out.append(report_dict(d));
            return out;
        },
        py::arg("variant") = "binary");
    m.def(
        "render_report_table", [](const std::string& variant) { return render_report_table(tradeoff_report(coeffs_for(parse_variant(variant)))); },
        py::arg("variant") = "binary");

    m.def("read_pgm", [](const std::string& path) { return image_to_u8(read_pgm(path)); }, py::arg("path"));
    m.def("write_pgm", [](const std::string& path, const U8Array& img) { write_pgm(path, image_from_u8(img)); },
          py::arg("path"), py::arg("image"));
}
