#include "stereocolor/methods.hpp"

#include "stereocolor/config.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/global_transfer.hpp"

namespace stereocolor {

std::string_view to_string(MethodType type) { return type == MethodType::Global ? "Global" : "Local"; }

const std::vector<MethodInfo>& registered_methods() {
    static const std::vector<MethodInfo> methods{
        {"reinhard", MethodType::Global, "Reinhard (Lab mean/std)"},
        {"xiao", MethodType::Global, "Xiao (covariance eigenbasis)"},
        {"pitie-cholesky", MethodType::Global, "Pitie linear (Cholesky)"},
        {"pitie-sqrt", MethodType::Global, "Pitie linear (square root)"},
        {"pitie-mk", MethodType::Global, "Pitie linear (Monge-Kantorovitch)"},
        {"pitie-idt", MethodType::Local, "Pitie IDT + regrain"},
    };
    return methods;
}

const MethodInfo& method_info(std::string_view name) {
    for (const MethodInfo& m : registered_methods())
        if (m.name == name) return m;
    std::string valid;
    for (const MethodInfo& m : registered_methods()) valid += (valid.empty() ? "" : "|") + m.name;
    throw InvalidArgument("unknown method '" + std::string(name) + "' (expected " + valid + ")");
}

CorrectionFn make_method(std::string_view name, const MethodOptions& options) {
    const std::string& key = method_info(name).name;
    if (key == "reinhard") return reinhard_transfer;
    if (key == "xiao") return xiao_transfer;
    if (key == "pitie-cholesky")
        return [](const Image& t, const Image& r) { return pitie_linear_transfer(t, r, Decomposition::Cholesky); };
    if (key == "pitie-sqrt")
        return [](const Image& t, const Image& r) { return pitie_linear_transfer(t, r, Decomposition::Sqrt); };
    if (key == "pitie-mk")
        return [](const Image& t, const Image& r) { return pitie_linear_transfer(t, r, Decomposition::MongeKantorovitch); };
    const IdtConfig idt = options.idt;
    idt.validate();
    return [idt](const Image& t, const Image& r) { return idt_transfer(t, r, idt); };
}

std::vector<std::string> parse_method_list(std::string_view list) {
    std::vector<std::string> out;
    for (const std::string& name : split(list, ',')) {
        if (name.empty()) continue;
        out.push_back(method_info(name).name);
    }
    if (out.empty()) throw InvalidArgument("no methods given");
    return out;
}

}  // namespace stereocolor
