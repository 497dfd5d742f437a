import configparser
import os
from typing import (
    IO,
    List,
    Optional,
)

MixvolConfigPath = "/etc/mixvol.cfg"
MixvolConfigLocations = [MixvolConfigPath]
UserConfigPath = os.path.join(os.path.expanduser("~"), ".mixvol")
MixvolConfigLocations.append(UserConfigPath)

HARNESS_SECTION = "harness"


class Config(configparser.ConfigParser):
    """
    mixvol allows library-wide configuration to be set in external files.
    These configuration files hold the defaults of the random instance model
    and of the verification harness, for example::

        [harness]
        coordinate_bound = 8
        denominators = 1,2,4
        workers = 4

    By default we use two locations for the mixvol configurations:

    * System wide: ``/etc/mixvol.cfg``
    * Individual user: ``~/.mixvol`` (which works on both Windows and Unix)
    """

    def __init__(self, path: Optional[str] = None, fp: Optional[IO[str]] = None, do_load: bool = True) -> None:
        super().__init__(
            {
                "extra_points": "4",
                "coordinate_bound": "8",
                "denominators": "1,2,4",
                "degenerate_fraction": "0.1",
                "workers": "1",
            }
        )
        if do_load:
            if path:
                self.read([path])
            elif fp:
                self.read_file(fp)
            else:
                self.read(MixvolConfigLocations)

    def harness_int(self, option: str) -> int:
        return self.getint(HARNESS_SECTION, option) if self.has_section(HARNESS_SECTION) else int(self.defaults()[option])

    def harness_float(self, option: str) -> float:
        if self.has_section(HARNESS_SECTION):
            return self.getfloat(HARNESS_SECTION, option)
        return float(self.defaults()[option])

    def harness_ints(self, option: str) -> List[int]:
        raw = self.get(HARNESS_SECTION, option) if self.has_section(HARNESS_SECTION) else self.defaults()[option]
        return [int(item) for item in raw.split(",") if item.strip()]
