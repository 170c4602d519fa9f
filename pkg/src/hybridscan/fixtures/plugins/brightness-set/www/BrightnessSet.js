var exec = require('cordova/exec');

module.exports = {
    run: function (success, failure) {
        exec(success, failure, 'BrightnessSet', 'run', []);
    }
};
