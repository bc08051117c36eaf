#include "kfs/dataset.hpp"

namespace kfs {

const FeatureCatalog& catalog() {
  static const FeatureCatalog kCatalog{{
      {"Tz1", "Mean value of all the mechanical power before the fault incipient time"},
      {"Tz2", "Maximum value of all the initial rotor acceleration rates"},
      {"Tz3", "Initial rotor angle of the machine with the maximum acceleration rate"},
      {"Tz4", "Mean value of all the initial acceleration power"},
      {"Tz5", "Value of system impact at t_{cl}"},
      {"Tz6", "Rotor angle of the machine with the biggest difference relative to the centre of inertia at t_{cl}"},
      {"Tz7", "Kinetic energy of the machine with the maximum rotor angle at t_{cl}"},
      {"Tz8", "Rotor angle of the machine with the maximum kinetic energy at t_{cl}"},
      {"Tz9", "Maximum value of all the rotor kinetic energies at t_{cl}"},
      {"Tz10", "Mean value of all the rotor kinetic energies at t_{cl}"},
      {"Tz11", "Maximum value of the difference of rotor angles at t_{cl}"},
      {"Tz12", "Rotor angular velocity of the machine with the biggest difference relative to the centre of inertia at t_{cl}"},
      {"Tz13", "Value of system impact at t_{cl+3c}"},
      {"Tz14", "Maximum value of all the rotor kinetic energies at t_{cl+3c}"},
      {"Tz15", "Mean value of all the rotor kinetic energies at t_{cl+3c}"},
      {"Tz16", "Rotor angle of the machine with the biggest difference relative to the centre of inertia at t_{cl+3c}"},
      {"Tz17", "Maximum value of the difference of rotor angles at t_{cl+3c}"},
      {"Tz18", "Kinetic energy of the machine with the maximum rotor angle at t_{cl+3c}"},
      {"Tz19", "Rotor angular velocity of the machine with the biggest difference relative to the centre of inertia at t_{cl+3c}"},
      {"Tz20", "Value of system impact at t_{cl+6c}"},
      {"Tz21", "Maximum value of all the rotor kinetic energies at t_{cl+6c}"},
      {"Tz22", "Mean value of all the rotor kinetic energies at t_{cl+6c}"},
      {"Tz23", "Kinetic energy of the machine with the maximum rotor angle at t_{cl+6c}"},
      {"Tz24", "Rotor angle of the machine with the biggest difference relative to the centre of inertia at t_{cl+6c}"},
      {"Tz25", "Maximum value of the difference of rotor angles at t_{cl+6c}"},
      {"Tz26", "Rotor angular velocity of the machine with the biggest difference relative to the centre of inertia at t_{cl+6c}"},
      {"Tz27", "Value of system impact at t_{cl+9c}"},
      {"Tz28", "Kinetic energy of the machine with the maximum rotor angle at t_{cl+9c}"},
      {"Tz29", "Maximum value of all the rotor kinetic energies at t_{cl+9c}"},
      {"Tz30", "Mean value of all the rotor kinetic energies at t_{cl+9c}"},
      {"Tz31", "Rotor angle of the machine with the biggest difference relative to the centre of inertia at t_{cl+9c}"},
      {"Tz32", "Maximum value of the difference of rotor angles at t_{cl+9c}"},
      {"Tz33", "Rotor angular velocity of the machine with the biggest difference relative to the centre of inertia at t_{cl+9c}"},
  }};
  return kCatalog;
}

}  // namespace kfs
